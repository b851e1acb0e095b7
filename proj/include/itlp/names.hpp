#pragma once

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>

namespace itlp {

// Benchmark row labels: "10C10L2TL" (10 customers, 10 sites, 2 links),
// "20C20L8T" (8 terminals), "10C10L4T4TL" (4 terminals and 4 links).
struct InstanceName {
  int n = 0;
  int p = 0;
  std::optional<int> links;      // trailing <v>TL
  std::optional<int> terminals;  // trailing <v>T

  std::string str() const {
    std::string s = std::to_string(n) + "C" + std::to_string(p) + "L";
    if (terminals) s += std::to_string(*terminals) + "T";
    if (links) s += std::to_string(*links) + "TL";
    return s;
  }
};

inline std::string encode_name(int n, int p, int value, const std::string &tag) {
  if (n <= 0 || p <= 0 || value < 0) throw std::invalid_argument("encode_name: bad counts");
  InstanceName nm;
  nm.n = n;
  nm.p = p;
  if (tag == "TL") nm.links = value;
  else if (tag == "T") nm.terminals = value;
  else throw std::invalid_argument("encode_name: tag must be \"T\" or \"TL\"");
  return nm.str();
}

inline std::string encode_name(int n, int p, int terminals, int links) {
  InstanceName nm;
  nm.n = n;
  nm.p = p;
  nm.terminals = terminals;
  nm.links = links;
  return nm.str();
}

namespace detail {
inline int take_int(const std::string &s, std::size_t &pos, const char *what) {
  if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
    throw std::invalid_argument("parse_name: expected digits for " + std::string(what) +
                                " at \"" + s.substr(pos) + "\"");
  long v = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    v = v * 10 + (s[pos] - '0');
    if (v > 1000000) throw std::invalid_argument("parse_name: value out of range");
    ++pos;
  }
  return static_cast<int>(v);
}
}  // namespace detail

inline InstanceName parse_name(const std::string &s) {
  std::size_t pos = 0;
  InstanceName nm;
  nm.n = detail::take_int(s, pos, "customer count");
  if (pos >= s.size() || s[pos] != 'C')
    throw std::invalid_argument("parse_name: expected 'C' at \"" + s.substr(pos) + "\"");
  ++pos;
  nm.p = detail::take_int(s, pos, "site count");
  if (pos >= s.size() || s[pos] != 'L')
    throw std::invalid_argument("parse_name: expected 'L' at \"" + s.substr(pos) + "\"");
  ++pos;
  const int v = detail::take_int(s, pos, "value");
  if (pos < s.size() && s[pos] == 'T' && pos + 1 < s.size() && s[pos + 1] == 'L') {
    nm.links = v;
    pos += 2;
  } else if (pos < s.size() && s[pos] == 'T') {
    nm.terminals = v;
    ++pos;
    if (pos < s.size()) {  // combined qT lTL form
      const int l = detail::take_int(s, pos, "link count");
      if (pos + 1 >= s.size() || s[pos] != 'T' || s[pos + 1] != 'L')
        throw std::invalid_argument("parse_name: expected trailing 'TL' at \"" +
                                    s.substr(pos) + "\"");
      pos += 2;
      nm.links = l;
    }
  } else {
    throw std::invalid_argument("parse_name: expected 'T' or 'TL' tag at \"" +
                                s.substr(pos) + "\"");
  }
  if (pos != s.size())
    throw std::invalid_argument("parse_name: trailing characters \"" + s.substr(pos) + "\"");
  return nm;
}

}  // namespace itlp
