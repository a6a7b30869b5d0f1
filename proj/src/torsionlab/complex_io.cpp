#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "splice/torsion_rational.hpp"

namespace splice::torsion {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw SyntaxError(0, "complex line " + std::to_string(line) + ": " + msg, line);
}

Rational parse_entry(std::size_t line, const std::string& token) {
  Rational q;
  try {
    if (token.empty() || token.find_first_not_of("+-0123456789/") != std::string::npos)
      throw std::invalid_argument(token);
    q.set_str(token[0] == '+' ? token.substr(1) : token, 10);
  } catch (const std::invalid_argument&) {
    fail(line, "bad rational entry '" + token + "'");
  }
  if (q.get_den() == 0) fail(line, "zero denominator in '" + token + "'");
  q.canonicalize();
  return q;
}

std::size_t parse_index(std::size_t line, const std::string& token, const std::string& what) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
    fail(line, "bad " + what + " '" + token + "'");
  return std::stoul(token);
}

}  // namespace

RationalComplex read_complex(std::istream& in) {
  std::optional<std::size_t> length;
  std::map<std::size_t, std::size_t> dims;
  std::map<std::size_t, std::pair<std::size_t, std::vector<Rational>>> boundary;
  std::map<std::size_t, std::vector<std::pair<std::size_t, std::vector<Rational>>>> homology;

  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    std::string keyword;
    if (!(words >> keyword)) continue;
    if (keyword == "complex") {
      if (length) fail(line, "header given twice");
      std::string arg;
      if (!(words >> arg) || !arg.starts_with("m=")) fail(line, "header must read 'complex m=<len>'");
      length = parse_index(line, arg.substr(2), "length");
      if (words >> arg) fail(line, "unexpected '" + arg + "' after header");
      continue;
    }
    if (!length) fail(line, "'" + keyword + "' before the 'complex m=<len>' header");
    std::string index_token;
    if (!(words >> index_token)) fail(line, "'" + keyword + "' needs a degree");
    const std::size_t i = parse_index(line, index_token, "degree");
    if (i > *length) fail(line, "degree " + std::to_string(i) + " exceeds the length " + std::to_string(*length));
    std::vector<Rational> entries;
    std::string token;
    if (keyword == "dim") {
      if (!(words >> token)) fail(line, "'dim' needs a dimension");
      if (!dims.emplace(i, parse_index(line, token, "dimension")).second)
        fail(line, "dimension of degree " + std::to_string(i) + " given twice");
      if (words >> token) fail(line, "unexpected '" + token + "' after dimension");
    } else if (keyword == "boundary") {
      if (i == 0) fail(line, "there is no boundary out of degree 0");
      while (words >> token) entries.push_back(parse_entry(line, token));
      if (!boundary.emplace(i, std::make_pair(line, std::move(entries))).second)
        fail(line, "boundary of degree " + std::to_string(i) + " given twice");
    } else if (keyword == "homology") {
      while (words >> token) entries.push_back(parse_entry(line, token));
      homology[i].emplace_back(line, std::move(entries));
    } else {
      fail(line, "unknown keyword '" + keyword + "'");
    }
  }
  if (!length) fail(line, "missing 'complex m=<len>' header");

  std::vector<std::size_t> dim_list;
  for (std::size_t i = 0; i <= *length; ++i) {
    auto it = dims.find(i);
    if (it == dims.end()) fail(line, "no dimension given for degree " + std::to_string(i));
    dim_list.push_back(it->second);
  }
  RationalComplex c = make_complex<Rational>(dim_list);
  for (auto& [i, entry] : boundary) {
    auto& [at, values] = entry;
    const std::size_t rows = dim_list[i - 1];
    const std::size_t cols = dim_list[i];
    if (values.size() != rows * cols)
      fail(at, "boundary " + std::to_string(i) + " needs " + std::to_string(rows * cols) + " entries, got " +
                   std::to_string(values.size()));
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t s = 0; s < cols; ++s) c.boundary[i](r, s) = values[r * cols + s];
  }
  for (auto& [i, lines] : homology) {
    const std::size_t n = dim_list[i];
    for (auto& [at, values] : lines) {
      if (n == 0 || values.size() % n != 0)
        fail(at, "homology " + std::to_string(i) + " entries must come in rows of " + std::to_string(n));
      for (std::size_t start = 0; start < values.size(); start += n)
        c.homology[i].emplace_back(values.begin() + static_cast<std::ptrdiff_t>(start),
                                   values.begin() + static_cast<std::ptrdiff_t>(start + n));
    }
  }
  return c;
}

RationalComplex read_complex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read complex '" + path + "'");
  try {
    return read_complex(in);
  } catch (const SyntaxError& e) {
    throw SyntaxError(e.offset(), path + ": " + e.what(), e.line());
  }
}

std::string write_complex(const RationalComplex& c) {
  std::ostringstream out;
  out << "complex m=" << c.length() << "\n";
  for (std::size_t i = 0; i < c.dims.size(); ++i) out << "dim " << i << " " << c.dims[i] << "\n";
  for (std::size_t i = 1; i < c.dims.size(); ++i) {
    const auto& b = c.boundary[i];
    if (b.rows() * b.cols() == 0) continue;
    out << "boundary " << i;
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t s = 0; s < b.cols(); ++s) out << " " << render(b(r, s));
    out << "\n";
  }
  for (std::size_t i = 0; i < c.dims.size(); ++i) {
    for (const auto& h : c.homology[i]) {
      out << "homology " << i;
      for (const auto& x : h) out << " " << render(x);
      out << "\n";
    }
  }
  return out.str();
}

std::string render(const Rational& q) { return q.get_str(); }

}  // namespace splice::torsion
