#include "gpdkit/constructors.hpp"

#include <algorithm>

namespace gpdkit {

GpdPtr trivial_groupoid(int n_points) {
  GroupoidBuilder b(n_points);
  for (int i = 0; i < n_points; ++i) {
    b.label(i, "u" + std::to_string(i)).self_unit(i).mul(i, i, i);
  }
  return b.build();
}

GpdPtr cyclic_group(int n) {
  GroupoidBuilder b(n);
  for (int i = 0; i < n; ++i) {
    b.label(i, i == 0 ? "e" : "g" + std::to_string(i));
    b.src(i, 0).rng(i, 0).inv(i, (n - i) % n);
    for (int j = 0; j < n; ++j) b.mul(i, j, (i + j) % n);
  }
  b.unit(0);
  return b.build();
}

GpdPtr group_from_table(const std::vector<std::vector<int>>& table,
                        const std::vector<std::string>& labels) {
  int n = static_cast<int>(table.size());
  GroupoidBuilder b(n);
  b.unit(0);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n)
      throw StructureError("group table must be square");
    if (!labels.empty()) b.label(i, labels[i]);
    b.src(i, 0).rng(i, 0);
    int invi = -1;
    for (int j = 0; j < n; ++j) {
      b.mul(i, j, table[i][j]);
      if (table[i][j] == 0) invi = j;
    }
    if (invi < 0) throw StructureError("group table has no inverse for element");
    b.inv(i, invi);
  }
  return b.build();
}

GpdPtr group_from_perms(const std::vector<perm::Perm>& elements,
                        const std::vector<std::string>& labels) {
  int n = static_cast<int>(elements.size());
  auto find = [&](const perm::Perm& p) {
    auto it = std::find(elements.begin(), elements.end(), p);
    if (it == elements.end())
      throw StructureError("permutation set is not closed under composition");
    return static_cast<int>(it - elements.begin());
  };
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table[i][j] = find(perm::compose(elements[i], elements[j]));
  int id = find(perm::identity(static_cast<int>(elements[0].size())));
  if (id != 0) throw StructureError("identity permutation must be element 0");
  return group_from_table(table, labels);
}

GpdPtr pair_groupoid(int n) {
  GroupoidBuilder b(n * n);
  auto id = [n](int p, int q) { return p * n + q; };
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      ElemId e = id(p, q);
      b.label(e, "(" + std::to_string(p) + "," + std::to_string(q) + ")");
      if (p == q) b.unit(e);
      b.src(e, id(q, q)).rng(e, id(p, p)).inv(e, id(q, p));
      for (int r = 0; r < n; ++r) b.mul(e, id(q, r), id(p, r));
    }
  return b.build();
}

GpdPtr transformation_groupoid(const GpdPtr& grp, int n_points,
                               const std::function<int(ElemId, int)>& act,
                               const std::vector<std::string>& point_labels) {
  const auto& G = *grp;
  if (G.units().size() != 1)
    throw StructureError("transformation_groupoid needs a one-object groupoid");
  ElemId e0 = G.units()[0];
  int m = G.size();
  auto id = [n_points](ElemId t, int x) { return t * n_points + x; };
  auto pname = [&](int x) {
    return point_labels.empty() ? std::to_string(x) : point_labels[x];
  };
  // action sanity: e0 acts as identity, action is compatible with products
  for (int x = 0; x < n_points; ++x) {
    if (act(e0, x) != x) throw StructureError("group action: unit must act trivially");
    for (ElemId t = 0; t < m; ++t) {
      int y = act(t, x);
      if (y < 0 || y >= n_points) throw StructureError("group action out of range");
      for (ElemId u = 0; u < m; ++u)
        if (act(u, y) != act(G.mul_req(u, t), x))
          throw StructureError("group action is not multiplicative");
    }
  }
  GroupoidBuilder b(m * n_points);
  for (ElemId t = 0; t < m; ++t)
    for (int x = 0; x < n_points; ++x) {
      ElemId e = id(t, x);
      b.label(e, "(" + G.label(t) + "," + pname(x) + ")");
      if (t == e0) b.unit(e);
      b.rng(e, id(e0, act(t, x)));
      b.src(e, id(e0, x));
      b.inv(e, id(G.inv(t), act(t, x)));
    }
  // (t1, t2*x)(t2, x) = (t1 t2, x)
  for (ElemId t1 = 0; t1 < m; ++t1)
    for (ElemId t2 = 0; t2 < m; ++t2)
      for (int x = 0; x < n_points; ++x)
        b.mul(id(t1, act(t2, x)), id(t2, x), id(G.mul_req(t1, t2), x));
  return b.build();
}

GpdPtr skew_product_groupoid(const GpdPtr& g, const GpdPtr& h,
                             const std::vector<ElemId>& c) {
  const auto& G = *g;
  const auto& H = *h;
  if (H.units().size() != 1)
    throw StructureError("skew product needs a one-object target");
  if (static_cast<int>(c.size()) != G.size())
    throw StructureError("cocycle must be defined on every element");
  for (ElemId a = 0; a < G.size(); ++a) {
    if (c[a] < 0 || c[a] >= H.size()) throw StructureError("cocycle out of range");
    for (ElemId b2 : G.arrows_into(G.src(a)))
      if (auto p = G.mul(a, b2))
        if (H.mul_req(c[a], c[b2]) != c[*p])
          throw StructureError("cocycle is not a homomorphism");
  }
  int m = H.size();
  auto id = [m](ElemId a, ElemId k) { return a * m + k; };
  GroupoidBuilder b(G.size() * m);
  for (ElemId a = 0; a < G.size(); ++a)
    for (ElemId k = 0; k < m; ++k) {
      ElemId e = id(a, k);
      b.label(e, "(" + G.label(a) + "," + H.label(k) + ")");
      if (G.is_unit(a)) b.unit(e);
      b.rng(e, id(G.rng(a), k));
      b.src(e, id(G.src(a), H.mul_req(k, c[a])));
      b.inv(e, id(G.inv(a), H.mul_req(k, c[a])));
    }
  // (a, k)(a', k c(a)) = (a a', k)
  for (ElemId a = 0; a < G.size(); ++a)
    for (ElemId a2 : G.arrows_into(G.src(a))) {
      auto p = G.mul(a, a2);
      if (!p) continue;
      for (ElemId k = 0; k < m; ++k)
        b.mul(id(a, k), id(a2, H.mul_req(k, c[a])), id(*p, k));
    }
  return b.build();
}

}  // namespace gpdkit
