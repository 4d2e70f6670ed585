#include "gpdkit/perm.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace gpdkit::perm {

Perm identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm compose(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (size_t x = 0; x < a.size(); ++x) c[x] = a[b[x]];
  return c;
}

Perm inverse(const Perm& a) {
  Perm c(a.size());
  for (size_t x = 0; x < a.size(); ++x) c[a[x]] = static_cast<int>(x);
  return c;
}

bool is_perm(const Perm& a) {
  std::vector<bool> hit(a.size(), false);
  for (int v : a) {
    if (v < 0 || v >= static_cast<int>(a.size()) || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

std::vector<Perm> generate(int n, const std::vector<Perm>& gens) {
  std::set<Perm> closed;
  closed.insert(identity(n));
  std::vector<Perm> frontier{identity(n)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& p : frontier)
      for (const auto& g : gens) {
        Perm q = compose(g, p);
        if (closed.insert(q).second) next.push_back(std::move(q));
      }
    frontier = std::move(next);
  }
  return {closed.begin(), closed.end()};
}

std::vector<int> cycle_type(const Perm& a) {
  std::vector<int> lens;
  std::vector<bool> seen(a.size(), false);
  for (size_t x = 0; x < a.size(); ++x) {
    if (seen[x]) continue;
    int len = 0;
    for (size_t y = x; !seen[y]; y = a[y]) {
      seen[y] = true;
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  return lens;
}

long long order(const Perm& a) {
  long long l = 1;
  for (int len : cycle_type(a)) l = std::lcm(l, static_cast<long long>(len));
  return l;
}

Perm parse_cycles(const std::string& text, int n) {
  Perm p = identity(n);
  size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && isspace(static_cast<unsigned char>(text[i]))) ++i; };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw std::invalid_argument("expected '(' in cycle notation");
    ++i;
    std::vector<int> cyc;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      size_t j = i;
      while (j < text.size() && isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) throw std::invalid_argument("expected digit in cycle notation");
      int v = std::stoi(text.substr(i, j - i));
      if (v < 0 || v >= n) throw std::invalid_argument("cycle point out of range");
      cyc.push_back(v);
      i = j;
      skip_ws();
    }
    if (i == text.size()) throw std::invalid_argument("unterminated cycle");
    ++i;  // ')'
    for (size_t k = 0; k < cyc.size(); ++k) {
      int from = cyc[k], to = cyc[(k + 1) % cyc.size()];
      if (p[from] != from) throw std::invalid_argument("point repeated across cycles");
      p[from] = to;
    }
    skip_ws();
  }
  if (!is_perm(p)) throw std::invalid_argument("cycles do not define a permutation");
  return p;
}

std::string format_cycles(const Perm& a) {
  std::string out;
  std::vector<bool> seen(a.size(), false);
  for (size_t x = 0; x < a.size(); ++x) {
    if (seen[x] || a[x] == static_cast<int>(x)) {
      seen[x] = true;
      continue;
    }
    out += '(';
    bool first = true;
    for (size_t y = x; !seen[y]; y = a[y]) {
      seen[y] = true;
      if (!first) out += ' ';
      out += std::to_string(y);
      first = false;
    }
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

}  // namespace gpdkit::perm
