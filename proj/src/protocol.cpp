#include "otm/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "otm/binomial.hpp"

namespace otm {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw std::invalid_argument(std::string("invalid hex digit '") + c + "'");
}

std::string bytes_to_hex(const std::vector<std::uint8_t>& bytes) {
  std::string s;
  s.reserve(2 * bytes.size());
  for (std::uint8_t b : bytes) {
    s.push_back(kHexDigits[b >> 4]);
    s.push_back(kHexDigits[b & 0xf]);
  }
  return s;
}

std::vector<std::uint8_t> hex_to_bytes(std::string_view hex) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("hex string has odd length");
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<std::uint8_t>(hex_value(hex[2 * i]) * 16 + hex_value(hex[2 * i + 1]));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_)
    if (b > 1) throw std::invalid_argument("BitString: entries must be 0 or 1");
}

std::size_t BitString::hamming(const BitString& other) const {
  if (other.size() != size()) throw std::invalid_argument("BitString::hamming: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) d += bits_[i] != other.bits_[i];
  return d;
}

std::string BitString::to_hex() const {
  std::vector<std::uint8_t> packed((bits_.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) packed[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  return bytes_to_hex(packed);
}

BitString BitString::from_hex(std::string_view hex, std::size_t n) {
  const auto packed = hex_to_bytes(hex);
  if (packed.size() != (n + 7) / 8) throw std::invalid_argument("BitString::from_hex: length does not match n");
  BitString out(n);
  for (std::size_t i = 0; i < n; ++i) out.bits_[i] = (packed[i / 8] >> (7 - i % 8)) & 1u;
  for (std::size_t i = n; i < packed.size() * 8; ++i)
    if ((packed[i / 8] >> (7 - i % 8)) & 1u) throw std::invalid_argument("BitString::from_hex: nonzero padding");
  return out;
}

BitString BitString::random(std::size_t n, RngStream& rng) {
  BitString out(n);
  for (std::size_t i = 0; i < n; ++i) out.bits_[i] = static_cast<std::uint8_t>(rng.next_bit());
  return out;
}

Message::Message(std::vector<std::uint8_t> bytes, std::size_t max_octets) : bytes_(std::move(bytes)) {
  if (bytes_.size() > max_octets) throw std::invalid_argument("Message: longer than the configured maximum");
}

Message Message::from_text(std::string_view text) { return Message(std::vector<std::uint8_t>(text.begin(), text.end())); }

Message Message::from_hex(std::string_view hex) { return Message(hex_to_bytes(hex)); }

Message Message::random(std::size_t octets, RngStream& rng) {
  std::vector<std::uint8_t> b(octets);
  for (auto& x : b) x = static_cast<std::uint8_t>(rng.next_bits() >> 56);
  return Message(std::move(b));
}

std::string Message::to_hex() const { return bytes_to_hex(bytes_); }

// ---------------------------------------------------------------------------

FuzzyLockOracle::FuzzyLockOracle(BitString r, Message m, OracleMode mode)
    : r_(std::move(r)), m_(std::move(m)), threshold_(threshold_for(r_.size())), mode_(mode) {}

std::size_t FuzzyLockOracle::threshold_for(std::size_t n) noexcept { return (15 * n) / 100; }

bool FuzzyLockOracle::accepts(const BitString& x) const { return r_.hamming(x) <= threshold_; }

std::optional<Message> FuzzyLockOracle::query(const BitString& x) {
  std::optional<Message> reply;
  if (mode_ == OracleMode::real && accepts(x)) reply = m_;
  transcript_.push_back({x, reply});
  return reply;
}

OtmInstance otm_prep(std::size_t n, const Message& m0, const Message& m1, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("otm_prep: n must be >= 1");
  RngStream rng(CounterRng(seed).child(stream_tag("otm-prep")));
  BitString r0 = BitString::random(n, rng);
  BitString r1 = BitString::random(n, rng);
  std::vector<QracState> qubits;
  qubits.reserve(n);
  for (std::size_t i = 0; i < n; ++i) qubits.push_back(encode(r0[i], r1[i]));
  FuzzyLockOracle o0(r0, m0), o1(r1, m1);
  return OtmInstance{n, std::move(r0), std::move(r1), std::move(qubits), std::move(o0), std::move(o1), seed, m0, m1};
}

std::optional<Message> otm_read(OtmInstance& inst, int alpha, const CounterRng& rng) {
  BitString guess(inst.n);
  for (std::size_t i = 0; i < inst.n; ++i) guess.set(i, sample_decode(alpha, inst.qubits[i], rng, i));
  return inst.oracle(alpha).query(guess);
}

// ---------------------------------------------------------------------------

double honest_bit_error() noexcept {
  const double s = std::sin(std::numbers::pi / 8.0);
  return s * s;
}

double correctness_margin() noexcept { return 0.15 - honest_bit_error(); }

double honest_success_exact(std::size_t n) {
  if (n < 1) throw std::invalid_argument("honest_success_exact: n must be >= 1");
  return binomial_cdf(n, FuzzyLockOracle::threshold_for(n), honest_bit_error());
}

double honest_failure_exact(std::size_t n) {
  if (n < 1) throw std::invalid_argument("honest_failure_exact: n must be >= 1");
  return binomial_sf(n, FuzzyLockOracle::threshold_for(n) + 1, honest_bit_error());
}

double chernoff_failure_bound(std::size_t n) {
  if (n < 1) throw std::invalid_argument("chernoff_failure_bound: n must be >= 1");
  const double d = correctness_margin();
  return std::exp(-2.0 * static_cast<double>(n) * d * d);
}

std::size_t correctness_crossover(double target, std::size_t step) {
  if (!(target > 0.0 && target < 1.0)) throw std::invalid_argument("correctness_crossover: target in (0, 1)");
  std::size_t hi = step;
  while (honest_failure_exact(hi) > target) hi *= 2;
  std::size_t lo = hi / 2 / step * step;  // failure(lo) > target unless lo == 0
  if (lo == 0) return hi;
  while (hi - lo > step) {
    const std::size_t mid = (lo + hi) / 2 / step * step;
    if (honest_failure_exact(mid) > target) lo = mid;
    else hi = mid;
  }
  return hi;
}

// ---------------------------------------------------------------------------

std::string instance_to_json(const OtmInstance& inst) {
  nlohmann::ordered_json j;
  j["n"] = inst.n;
  j["r0"] = inst.r0.to_hex();
  j["r1"] = inst.r1.to_hex();
  j["seed"] = inst.seed;
  j["m0"] = inst.m0.to_hex();
  j["m1"] = inst.m1.to_hex();
  return j.dump();
}

OtmInstance instance_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    const std::size_t n = j.at("n").get<std::size_t>();
    if (n < 1) throw std::invalid_argument("instance_from_json: n must be >= 1");
    BitString r0 = BitString::from_hex(j.at("r0").get<std::string>(), n);
    BitString r1 = BitString::from_hex(j.at("r1").get<std::string>(), n);
    Message m0 = Message::from_hex(j.at("m0").get<std::string>());
    Message m1 = Message::from_hex(j.at("m1").get<std::string>());
    std::vector<QracState> qubits;
    qubits.reserve(n);
    for (std::size_t i = 0; i < n; ++i) qubits.push_back(encode(r0[i], r1[i]));
    FuzzyLockOracle o0(r0, m0), o1(r1, m1);
    return OtmInstance{n, std::move(r0), std::move(r1), std::move(qubits), std::move(o0), std::move(o1),
                       j.at("seed").get<std::uint64_t>(), std::move(m0), std::move(m1)};
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("instance_from_json: ") + e.what());
  }
}

std::string transcripts_to_csv(const OtmInstance& inst) {
  std::ostringstream os;
  os << "query_hex,reply,oracle_id,index\n";
  for (int id = 0; id < 2; ++id) {
    const auto& t = inst.oracle(id).transcript();
    for (std::size_t i = 0; i < t.size(); ++i)
      os << t[i].query.to_hex() << ',' << (t[i].reply ? t[i].reply->to_hex() : "bot") << ',' << id << ',' << i
         << '\n';
  }
  return os.str();
}

}  // namespace otm
