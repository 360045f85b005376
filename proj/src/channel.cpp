#include "garblekit/channel.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>
#include <thread>

namespace garblekit {

const char* frame_tag_name(FrameTag t) {
  switch (t) {
    case FrameTag::GcGate: return "GC_GATE";
    case FrameTag::GcBulk: return "GC_BULK";
    case FrameTag::InputLabels: return "INPUT_LABELS";
    case FrameTag::OtReq: return "OT_REQ";
    case FrameTag::OtResp: return "OT_RESP";
    case FrameTag::OutputLabels: return "OUTPUT_LABELS";
    case FrameTag::OutputPlain: return "OUTPUT_PLAIN";
    case FrameTag::Abort: return "ABORT";
    case FrameTag::OsnOffline: return "OSN_OFFLINE";
    case FrameTag::OsnBlindIn: return "OSN_BLIND_IN";
    case FrameTag::OsnBlindOut: return "OSN_BLIND_OUT";
    case FrameTag::PfeGrouping: return "PFE_GROUPING";
  }
  return "?";
}

void Channel::send(FrameTag tag, std::span<const std::uint8_t> payload) {
  log_.push_back({true, static_cast<std::uint8_t>(tag), payload.size()});
  Frame f{tag, Bytes(payload.begin(), payload.end())};
  send_impl(f);
}

Frame Channel::recv() {
  Frame f = recv_impl();
  log_.push_back({false, static_cast<std::uint8_t>(f.tag), f.payload.size()});
  return f;
}

Frame Channel::expect(FrameTag tag) {
  Frame f = recv();
  if (f.tag == FrameTag::Abort)
    throw ProtocolAbort(std::string(f.payload.begin(), f.payload.end()));
  if (f.tag != tag)
    throw ProtocolError(std::string("expected frame ") + frame_tag_name(tag) + ", got " +
                        frame_tag_name(f.tag));
  return f;
}

void Channel::abort(const std::string& reason) {
  send(FrameTag::Abort,
       std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(reason.data()),
                                     reason.size()));
}

namespace {

struct InProcQueue {
  std::mutex mu;
  std::condition_variable cv_send, cv_recv;
  std::deque<Frame> q;
  std::size_t capacity;
  bool closed = false;

  explicit InProcQueue(std::size_t cap) : capacity(cap) {}

  void push(Frame f) {
    std::unique_lock<std::mutex> lk(mu);
    cv_send.wait(lk, [&] { return q.size() < capacity || closed; });
    if (closed) throw ProtocolError("channel closed");
    q.push_back(std::move(f));
    cv_recv.notify_one();
  }

  Frame pop() {
    std::unique_lock<std::mutex> lk(mu);
    cv_recv.wait(lk, [&] { return !q.empty() || closed; });
    if (q.empty()) throw ProtocolError("channel closed by peer");
    Frame f = std::move(q.front());
    q.pop_front();
    cv_send.notify_one();
    return f;
  }

  void close() {
    std::lock_guard<std::mutex> lk(mu);
    closed = true;
    cv_send.notify_all();
    cv_recv.notify_all();
  }
};

class InProcChannel final : public Channel {
 public:
  InProcChannel(std::shared_ptr<InProcQueue> out, std::shared_ptr<InProcQueue> in)
      : out_(std::move(out)), in_(std::move(in)) {}
  ~InProcChannel() override {
    out_->close();
    in_->close();
  }

 protected:
  void send_impl(const Frame& f) override { out_->push(f); }
  Frame recv_impl() override { return in_->pop(); }

 private:
  std::shared_ptr<InProcQueue> out_, in_;
};

class SocketChannel final : public Channel {
 public:
  explicit SocketChannel(int fd) : fd_(fd) {}
  ~SocketChannel() override {
    if (fd_ >= 0) ::close(fd_);
  }

 protected:
  void send_impl(const Frame& f) override {
    std::uint8_t hdr[5];
    hdr[0] = static_cast<std::uint8_t>(f.tag);
    std::uint32_t len = static_cast<std::uint32_t>(f.payload.size());
    std::memcpy(hdr + 1, &len, 4);
    write_all(hdr, 5);
    write_all(f.payload.data(), f.payload.size());
  }

  Frame recv_impl() override {
    std::uint8_t hdr[5];
    read_all(hdr, 5);
    std::uint32_t len;
    std::memcpy(&len, hdr + 1, 4);
    Frame f;
    f.tag = static_cast<FrameTag>(hdr[0]);
    f.payload.resize(len);
    read_all(f.payload.data(), len);
    return f;
  }

 private:
  void write_all(const std::uint8_t* p, std::size_t n) {
    while (n > 0) {
      ssize_t w = ::send(fd_, p, n, MSG_NOSIGNAL);
      if (w <= 0) throw ProtocolError("socket write failed");
      p += w;
      n -= static_cast<std::size_t>(w);
    }
  }
  void read_all(std::uint8_t* p, std::size_t n) {
    while (n > 0) {
      ssize_t r = ::recv(fd_, p, n, 0);
      if (r <= 0) throw ProtocolError("socket read failed (peer gone?)");
      p += r;
      n -= static_cast<std::size_t>(r);
    }
  }
  int fd_;
};

}  // namespace

std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> make_inproc_pair(
    std::size_t capacity) {
  auto ab = std::make_shared<InProcQueue>(capacity);
  auto ba = std::make_shared<InProcQueue>(capacity);
  return {std::make_unique<InProcChannel>(ab, ba), std::make_unique<InProcChannel>(ba, ab)};
}

std::unique_ptr<Channel> channel_listen(std::uint16_t port) {
  int srv = ::socket(AF_INET, SOCK_STREAM, 0);
  if (srv < 0) throw ProtocolError("socket() failed");
  int one = 1;
  ::setsockopt(srv, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_ANY);
  addr.sin_port = htons(port);
  if (::bind(srv, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 || ::listen(srv, 1) < 0) {
    ::close(srv);
    throw ProtocolError("bind/listen failed on port " + std::to_string(port));
  }
  int fd = ::accept(srv, nullptr, nullptr);
  ::close(srv);
  if (fd < 0) throw ProtocolError("accept failed");
  one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return std::make_unique<SocketChannel>(fd);
}

std::unique_ptr<Channel> channel_connect(const std::string& host, std::uint16_t port) {
  // the peer may still be setting up its listener
  for (int attempt = 0;; ++attempt) {
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    if (getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res) != 0)
      throw ProtocolError("cannot resolve host " + host);
    int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd >= 0 && ::connect(fd, res->ai_addr, res->ai_addrlen) == 0) {
      freeaddrinfo(res);
      int one = 1;
      ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
      return std::make_unique<SocketChannel>(fd);
    }
    if (fd >= 0) ::close(fd);
    freeaddrinfo(res);
    if (attempt >= 50) throw ProtocolError("cannot connect to " + host + ":" + std::to_string(port));
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
  }
}

}  // namespace garblekit
