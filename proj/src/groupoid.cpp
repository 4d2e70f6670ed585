#include "gpdkit/groupoid.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <thread>

namespace gpdkit {

namespace {

int checker_threads() {
  if (const char* env = std::getenv("GPDKIT_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1)
      return std::min(v, static_cast<int>(std::thread::hardware_concurrency()));
  }
  return 1;
}

}  // namespace

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::auto_pass_finite: return "auto-pass-finite";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

ElemId FiniteGroupoid::mul_req(ElemId a, ElemId b) const {
  auto p = mul(a, b);
  if (!p)
    throw StructureError("undefined product " + std::to_string(a) + "*" +
                         std::to_string(b));
  return *p;
}

ElemId FiniteGroupoid::mul_req(std::initializer_list<ElemId> chain) const {
  auto it = chain.begin();
  ElemId acc = *it++;
  for (; it != chain.end(); ++it) acc = mul_req(acc, *it);
  return acc;
}

std::optional<ElemId> FiniteGroupoid::find_label(const std::string& lbl) const {
  for (ElemId e = 0; e < size(); ++e)
    if (labels_[e] == lbl) return e;
  return std::nullopt;
}

const std::vector<ElemId>& FiniteGroupoid::arrows_into(ElemId u) const {
  return into_[u];
}

const std::vector<ElemId>& FiniteGroupoid::arrows_out_of(ElemId u) const {
  return out_of_[u];
}

GroupoidBuilder::GroupoidBuilder(int n)
    : n_(n), src_(n, -1), rng_(n, -1), inv_(n, -1), is_unit_(n, false),
      labels_(n) {
  if (n <= 0) throw StructureError("groupoid needs at least one element");
  for (int i = 0; i < n; ++i) labels_[i] = "e" + std::to_string(i);
}

void GroupoidBuilder::check_id(ElemId e, const char* what) const {
  if (e < 0 || e >= n_)
    throw StructureError(std::string(what) + ": id " + std::to_string(e) +
                         " out of range [0," + std::to_string(n_) + ")");
}

GroupoidBuilder& GroupoidBuilder::label(ElemId e, std::string lbl) {
  check_id(e, "label");
  labels_[e] = std::move(lbl);
  return *this;
}

GroupoidBuilder& GroupoidBuilder::unit(ElemId u) {
  check_id(u, "unit");
  is_unit_[u] = true;
  return *this;
}

GroupoidBuilder& GroupoidBuilder::src(ElemId e, ElemId u) {
  check_id(e, "src");
  check_id(u, "src target");
  if (src_[e] != -1 && src_[e] != u) throw StructureError("src redefined");
  src_[e] = u;
  return *this;
}

GroupoidBuilder& GroupoidBuilder::rng(ElemId e, ElemId u) {
  check_id(e, "rng");
  check_id(u, "rng target");
  if (rng_[e] != -1 && rng_[e] != u) throw StructureError("rng redefined");
  rng_[e] = u;
  return *this;
}

GroupoidBuilder& GroupoidBuilder::inv(ElemId e, ElemId f) {
  check_id(e, "inv");
  check_id(f, "inv target");
  if (inv_[e] != -1 && inv_[e] != f) throw StructureError("inv redefined");
  inv_[e] = f;
  return *this;
}

GroupoidBuilder& GroupoidBuilder::mul(ElemId a, ElemId b, ElemId c) {
  check_id(a, "mul lhs");
  check_id(b, "mul rhs");
  check_id(c, "mul result");
  int64_t k = static_cast<int64_t>(a) * n_ + b;
  auto it = mul_.find(k);
  if (it != mul_.end() && it->second != c) throw StructureError("mul redefined");
  mul_[k] = c;
  return *this;
}

GpdPtr GroupoidBuilder::build() {
  for (int e = 0; e < n_; ++e) {
    if (src_[e] < 0) throw StructureError("src undefined for " + labels_[e]);
    if (rng_[e] < 0) throw StructureError("rng undefined for " + labels_[e]);
    if (inv_[e] < 0) throw StructureError("inv undefined for " + labels_[e]);
  }
  auto g = std::make_shared<FiniteGroupoid>();
  g->src_ = src_;
  g->rng_ = rng_;
  g->inv_ = inv_;
  g->is_unit_ = is_unit_;
  g->mul_ = mul_;
  g->labels_ = labels_;
  for (int e = 0; e < n_; ++e)
    if (is_unit_[e]) g->units_.push_back(e);
  g->into_.resize(n_);
  g->out_of_.resize(n_);
  for (int e = 0; e < n_; ++e) {
    ElemId r = rng_[e], s = src_[e];
    if (r >= 0 && r < n_ && is_unit_[r]) g->into_[r].push_back(e);
    if (s >= 0 && s < n_ && is_unit_[s]) g->out_of_[s].push_back(e);
  }
  return g;
}

namespace {

bool is_excluded(const std::vector<std::pair<ElemId, ElemId>>& excluded,
                 ElemId a, ElemId b) {
  for (const auto& p : excluded)
    if (p.first == a && p.second == b) return true;
  return false;
}

}  // namespace

ValidationReport validate_groupoid_partial(
    const FiniteGroupoid& g,
    const std::vector<std::pair<ElemId, ElemId>>& excluded) {
  ValidationReport rep;
  const int n = g.size();

  // src/rng land in units.
  {
    bool ok = true;
    for (ElemId e = 0; e < n && ok; ++e) {
      if (!g.is_unit(g.src(e))) { rep.add_fail("src-into-units", {e}); ok = false; }
      else if (!g.is_unit(g.rng(e))) { rep.add_fail("rng-into-units", {e}); ok = false; }
    }
    if (ok) rep.add_pass("src-rng-into-units", n);
  }

  // units: exactly the elements with src=rng=self and u*u=u.
  {
    bool ok = true;
    for (ElemId e = 0; e < n && ok; ++e) {
      bool looks_like_unit = g.src(e) == e && g.rng(e) == e &&
                             g.mul(e, e).value_or(-1) == e;
      if (g.is_unit(e) && !looks_like_unit) {
        rep.add_fail("unit-law", {e}, "flagged unit fails u*u=u or src/rng");
        ok = false;
      } else if (!g.is_unit(e) && looks_like_unit) {
        rep.add_fail("unit-law", {e}, "unflagged element behaves like a unit");
        ok = false;
      }
    }
    if (ok) rep.add_pass("unit-law", n);
  }

  // involutivity and typing of inverses.
  {
    bool ok = true;
    for (ElemId e = 0; e < n && ok; ++e) {
      if (g.inv(g.inv(e)) != e) { rep.add_fail("inv-involutive", {e}); ok = false; }
      else if (g.src(g.inv(e)) != g.rng(e) || g.rng(g.inv(e)) != g.src(e)) {
        rep.add_fail("inv-typing", {e});
        ok = false;
      }
    }
    if (ok) rep.add_pass("inv-involutive", n);
  }

  // mul defined iff composable, and typing src(ab)=src(b), rng(ab)=rng(a).
  {
    long long pairs = 0;
    bool ok = true;
    for (ElemId a = 0; a < n && ok; ++a)
      for (ElemId b = 0; b < n && ok; ++b) {
        auto p = g.mul(a, b);
        if (g.composable(a, b)) {
          ++pairs;
          if (!p) {
            if (!is_excluded(excluded, a, b)) {
              rep.add_fail("mul-domain", {a, b}, "composable pair lacks product");
              ok = false;
            }
          } else if (g.src(*p) != g.src(b) || g.rng(*p) != g.rng(a)) {
            rep.add_fail("mul-typing", {a, b, *p});
            ok = false;
          }
        } else if (p) {
          rep.add_fail("mul-domain", {a, b}, "product defined off the fiber product");
          ok = false;
        }
      }
    if (ok) rep.add_pass("mul-domain", pairs);
  }

  // left/right identities.
  {
    bool ok = true;
    for (ElemId e = 0; e < n && ok; ++e) {
      auto l = g.mul(g.rng(e), e);
      auto r = g.mul(e, g.src(e));
      if (l && *l != e) { rep.add_fail("identity-law", {g.rng(e), e}); ok = false; }
      else if (r && *r != e) { rep.add_fail("identity-law", {e, g.src(e)}); ok = false; }
    }
    if (ok) rep.add_pass("identity-law", n);
  }

  // inverse law: a * inv(a) = rng(a), inv(a) * a = src(a).
  {
    bool ok = true;
    for (ElemId e = 0; e < n && ok; ++e) {
      auto l = g.mul(e, g.inv(e));
      auto r = g.mul(g.inv(e), e);
      if (l && *l != g.rng(e)) { rep.add_fail("inverse-law", {e}); ok = false; }
      else if (r && *r != g.src(e)) { rep.add_fail("inverse-law", {e}); ok = false; }
      else if ((!l || !r) && !is_excluded(excluded, e, g.inv(e)) &&
               !is_excluded(excluded, g.inv(e), e)) {
        rep.add_fail("inverse-law", {e}, "product with inverse undefined");
        ok = false;
      }
    }
    if (ok) rep.add_pass("inverse-law", n);
  }

  // associativity over composable triples where all products exist; the
  // sweep partitions across workers (GPDKIT_THREADS) with an ordered merge,
  // so the reported witness is the lexicographically minimal one either way.
  {
    struct Slice {
      long long triples = 0;
      std::vector<long long> witness;  // empty = no violation
    };
    auto sweep = [&g](ElemId lo, ElemId hi) {
      Slice s;
      for (ElemId a = lo; a < hi; ++a) {
        for (ElemId b : g.arrows_into(g.src(a))) {
          auto ab = g.mul(a, b);
          for (ElemId c : g.arrows_into(g.src(b))) {
            auto bc = g.mul(b, c);
            if (!ab || !bc) continue;
            auto l = g.mul(*ab, c);
            auto r = g.mul(a, *bc);
            if (!l || !r) continue;
            ++s.triples;
            if (*l != *r) {
              s.witness = {a, b, c};
              return s;
            }
          }
        }
      }
      return s;
    };

    int workers = std::min(checker_threads(), std::max(1, n));
    std::vector<Slice> slices;
    if (workers <= 1) {
      slices.push_back(sweep(0, n));
    } else {
      std::vector<std::future<Slice>> futs;
      int chunk = (n + workers - 1) / workers;
      for (int w = 0; w < workers; ++w) {
        ElemId lo = w * chunk, hi = std::min(n, (w + 1) * chunk);
        if (lo >= hi) break;
        futs.push_back(std::async(std::launch::async, sweep, lo, hi));
      }
      for (auto& f : futs) slices.push_back(f.get());
    }
    long long triples = 0;
    const std::vector<long long>* first_witness = nullptr;
    for (const auto& s : slices) {
      triples += s.triples;
      if (!s.witness.empty() && !first_witness) first_witness = &s.witness;
    }
    if (first_witness)
      rep.add_fail("associativity", *first_witness);
    else
      rep.add_pass("associativity", triples);
  }

  return rep;
}

ValidationReport validate_groupoid(const FiniteGroupoid& g) {
  return validate_groupoid_partial(g, {});
}

}  // namespace gpdkit
