#include "lowdeg/boolean_function.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "lowdeg/error.hpp"

namespace lowdeg {

void check_dim(int p) {
  if (p < 1 || p > kMaxDim)
    fail(ErrorCode::InvalidArgument, "dimension p must be in [1, " + std::to_string(kMaxDim) + "], got " +
                                         std::to_string(p));
}

std::uint64_t word_count(int p) { return p >= 6 ? (std::uint64_t{1} << (p - 6)) : 1; }

namespace {

std::uint64_t tail_mask(int p) { return p >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (1u << p)) - 1; }

}  // namespace

BooleanFunction::BooleanFunction(int p) : p_(p) {
  check_dim(p);
  words_.assign(word_count(p), 0);
}

BooleanFunction::BooleanFunction(int p, std::vector<std::uint64_t> words) : p_(p), words_(std::move(words)) {}

BooleanFunction BooleanFunction::constant(int p, int value) {
  require(value == 1 || value == -1, "constant value must be +1 or -1");
  BooleanFunction f(p);
  if (value == -1) {
    for (auto& w : f.words_) w = ~std::uint64_t{0};
    f.words_.back() &= tail_mask(p);
  }
  return f;
}

BooleanFunction BooleanFunction::character(int p, std::uint64_t mask) {
  BooleanFunction f(p);
  require(mask < f.size(), "character mask out of range");
  for (std::uint64_t m = 0; m < f.size(); ++m)
    if (std::popcount(m & mask) & 1) f.flip(m);
  return f;
}

BooleanFunction BooleanFunction::from_signs(int p, std::span<const int> signs) {
  BooleanFunction f(p);
  require(signs.size() == f.size(), "sign vector length must be 2^p");
  for (std::uint64_t m = 0; m < f.size(); ++m) f.set_value(m, signs[m]);
  return f;
}

BooleanFunction BooleanFunction::from_words(int p, std::vector<std::uint64_t> words) {
  check_dim(p);
  require(words.size() == word_count(p), "packed table must hold exactly 2^p bits");
  require((words.back() & ~tail_mask(p)) == 0, "packed table has bits set past 2^p");
  return BooleanFunction(p, std::move(words));
}

BooleanFunction BooleanFunction::from_index(int p, std::uint64_t bits) {
  require(p >= 1 && p <= 6, "from_index requires p <= 6");
  return from_words(p, {bits & tail_mask(p)});
}

void BooleanFunction::set_value(std::uint64_t m, int v) {
  require(v == 1 || v == -1, "Boolean values must be +1 or -1");
  const std::uint64_t bit = std::uint64_t{1} << (m & 63);
  if (v == -1)
    words_[m >> 6] |= bit;
  else
    words_[m >> 6] &= ~bit;
}

std::vector<std::int64_t> BooleanFunction::signs() const {
  std::vector<std::int64_t> out(size());
  for (std::uint64_t m = 0; m < out.size(); ++m) out[m] = value(m);
  return out;
}

BooleanFunction BooleanFunction::negated() const {
  BooleanFunction g = *this;
  for (auto& w : g.words_) w = ~w;
  g.words_.back() &= tail_mask(p_);
  return g;
}

BooleanFunction BooleanFunction::flipped(std::span<const std::uint64_t> points) const {
  BooleanFunction g = *this;
  for (auto m : points) {
    require(m < size(), "flip point out of range");
    g.flip(m);
  }
  return g;
}

BooleanFunction parse_wbf(std::string_view text) {
  auto next_line = [&text](std::string_view& line) {
    if (text.empty()) return false;
    const auto nl = text.find('\n');
    line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    return true;
  };
  std::string_view magic, dim, table;
  if (!next_line(magic) || magic != "WBF1") fail(ErrorCode::Parse, "WBF1: missing magic line");
  if (!next_line(dim) || dim.empty() || (dim.size() > 1 && dim[0] == '0'))
    fail(ErrorCode::Parse, "WBF1: malformed dimension line");
  int p = 0;
  const auto [ptr, ec] = std::from_chars(dim.data(), dim.data() + dim.size(), p);
  if (ec != std::errc{} || ptr != dim.data() + dim.size()) fail(ErrorCode::Parse, "WBF1: malformed dimension line");
  if (p < 1 || p > kMaxDim) fail(ErrorCode::Parse, "WBF1: dimension out of range");
  if (!next_line(table)) fail(ErrorCode::Parse, "WBF1: missing truth table line");
  if (!text.empty()) fail(ErrorCode::Parse, "WBF1: trailing content after truth table");
  BooleanFunction f(p);
  if (table.size() != f.size())
    fail(ErrorCode::Parse, "WBF1: truth table must have exactly 2^p = " + std::to_string(f.size()) + " characters");
  for (std::uint64_t m = 0; m < f.size(); ++m) {
    if (table[m] == '-')
      f.flip(m);
    else if (table[m] != '+')
      fail(ErrorCode::Parse, "WBF1: truth table characters must be '+' or '-'");
  }
  return f;
}

std::string format_wbf(const BooleanFunction& f) {
  std::string out = "WBF1\n" + std::to_string(f.dim()) + "\n";
  out.reserve(out.size() + f.size() + 1);
  for (std::uint64_t m = 0; m < f.size(); ++m) out.push_back(f.bit(m) ? '-' : '+');
  out.push_back('\n');
  return out;
}

BooleanFunction load_wbf(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_wbf(buf.str());
}

void save_wbf(const BooleanFunction& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path);
  out << format_wbf(f);
}

}  // namespace lowdeg
