#include "pcorr/sequences.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pcorr/errors.hpp"
#include "pcorr/primes.hpp"

namespace pcorr {

namespace {

unsigned parse_param(std::string_view text, std::string_view whole) {
  unsigned v = 0;
  if (text.empty()) throw ParseError("missing parameter in '" + std::string(whole) + "'");
  for (char ch : text) {
    if (!std::isdigit(static_cast<unsigned char>(ch)) || v > 100000) {
      throw ParseError("bad parameter in sequence '" + std::string(whole) + "'");
    }
    v = v * 10 + static_cast<unsigned>(ch - '0');
  }
  return v;
}

}  // namespace

SequenceSpec SequenceSpec::kth_powers(unsigned k) {
  if (k < 1) throw InvalidArgument("kth_powers requires k >= 1");
  SequenceSpec s;
  s.kind = Kind::kKthPowers;
  s.k = k;
  return s;
}

SequenceSpec SequenceSpec::lacunary(unsigned base) {
  if (base < 2) throw InvalidArgument("lacunary requires base >= 2");
  SequenceSpec s;
  s.kind = Kind::kLacunary;
  s.base = base;
  return s;
}

SequenceSpec SequenceSpec::file(std::filesystem::path path) {
  SequenceSpec s;
  s.kind = Kind::kFile;
  s.path = std::move(path);
  return s;
}

SequenceSpec SequenceSpec::parse(std::string_view text) {
  std::string_view head = text;
  std::string_view arg;
  bool has_arg = false;
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    head = text.substr(0, colon);
    arg = text.substr(colon + 1);
    has_arg = true;
  }
  if (head == "primes" && !has_arg) return primes();
  if (head == "naturals" && !has_arg) return naturals();
  if (head == "squares" && !has_arg) return kth_powers(2);
  if (head == "powers") return kth_powers(parse_param(arg, text));
  if (head == "lacunary") return lacunary(has_arg ? parse_param(arg, text) : 2);
  if (head == "file" && has_arg && !arg.empty()) return file(std::string(arg));
  throw ParseError("unknown sequence '" + std::string(text) +
                   "' (primes, naturals, squares, powers:K, lacunary[:B], file:PATH)");
}

std::string SequenceSpec::name() const {
  switch (kind) {
    case Kind::kPrimes:
      return "primes";
    case Kind::kNaturals:
      return "naturals";
    case Kind::kKthPowers:
      return k == 2 ? "squares" : "powers:" + std::to_string(k);
    case Kind::kLacunary:
      return "lacunary:" + std::to_string(base);
    case Kind::kFile:
      return "file:" + path.string();
  }
  return "?";
}

std::vector<std::uint64_t> first_primes(std::size_t n) {
  if (n == 0) throw InvalidArgument("first_primes requires n >= 1");
  PrimeTable t = primes_up_to(nth_prime_upper_bound(n));
  std::vector<std::uint64_t> out(t.primes().begin(),
                                 t.primes().begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

std::vector<BigInt> generate(const SequenceSpec& spec, std::size_t n) {
  if (n == 0) throw InvalidArgument("sequence length N must be >= 1");
  std::vector<BigInt> out;
  out.reserve(n);
  switch (spec.kind) {
    case SequenceSpec::Kind::kPrimes:
      for (std::uint64_t p : first_primes(n)) out.emplace_back(p);
      break;
    case SequenceSpec::Kind::kNaturals:
      for (std::size_t i = 1; i <= n; ++i) out.emplace_back(i);
      break;
    case SequenceSpec::Kind::kKthPowers:
      if (spec.k < 1) throw InvalidArgument("kth_powers requires k >= 1");
      for (std::size_t i = 1; i <= n; ++i) {
        out.push_back(boost::multiprecision::pow(BigInt(i), spec.k));
      }
      break;
    case SequenceSpec::Kind::kLacunary: {
      if (spec.base < 2) throw InvalidArgument("lacunary requires base >= 2");
      if (n > kMaxLacunaryTerms) {
        throw BudgetExceeded("lacunary sequences are capped at N = " +
                             std::to_string(kMaxLacunaryTerms));
      }
      BigInt v = 1;
      for (std::size_t i = 0; i < n; ++i) {
        out.push_back(v);
        v *= spec.base;
      }
      break;
    }
    case SequenceSpec::Kind::kFile: {
      std::vector<BigInt> all = read_sequence_file(spec.path);
      if (all.size() < n) {
        throw InvalidArgument(spec.path.string() + " holds " + std::to_string(all.size()) +
                              " terms, " + std::to_string(n) + " requested");
      }
      all.resize(n);
      out = std::move(all);
      break;
    }
  }
  return out;
}

std::optional<std::vector<std::uint64_t>> generate_u64(const SequenceSpec& spec, std::size_t n) {
  if (spec.kind == SequenceSpec::Kind::kPrimes) return first_primes(n);
  std::vector<std::uint64_t> out;
  out.reserve(n);
  for (const BigInt& v : generate(spec, n)) {
    auto u = to_u64(v);
    if (!u) return std::nullopt;
    out.push_back(*u);
  }
  return out;
}

std::vector<BigInt> parse_sequence_text(std::string_view text) {
  std::vector<BigInt> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) {
      line.remove_prefix(1);
    }
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
      line.remove_suffix(1);
    }
    if (line.empty()) continue;
    BigInt v = 0;
    for (char ch : line) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) {
        throw ParseError("expected a positive decimal integer, got '" + std::string(line) + "'",
                         line_no);
      }
      v = v * 10 + (ch - '0');
    }
    if (v <= 0) throw ParseError("terms must be positive", line_no);
    if (!out.empty() && v <= out.back()) {
      throw ParseError("terms must be strictly increasing", line_no);
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<BigInt> read_sequence_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open sequence file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_sequence_text(buf.str());
}

double nth_prime_ratio(std::size_t n) {
  if (n < 2) throw InvalidArgument("nth_prime_ratio requires N >= 2");
  const double p = static_cast<double>(first_primes(n).back());
  const double x = static_cast<double>(n);
  return p / (x * std::log(x));
}

}  // namespace pcorr
