#include "gpdkit/dsl.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace gpdkit::dsl {

namespace {

struct Token {
  std::string text;
  int line, col;
};

struct Line {
  std::vector<Token> tokens;
  int line = 0;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  int lineno = 1;
  size_t i = 0;
  while (i <= text.size()) {
    size_t end = text.find('\n', i);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + i, end - i);
    Line L;
    L.line = lineno;
    size_t j = 0;
    while (j < line.size()) {
      if (isspace(static_cast<unsigned char>(line[j]))) {
        ++j;
        continue;
      }
      if (line[j] == '#') break;
      size_t k = j;
      while (k < line.size() && !isspace(static_cast<unsigned char>(line[k])) &&
             line[k] != '#')
        ++k;
      L.tokens.push_back({std::string(line.substr(j, k - j)), lineno,
                          static_cast<int>(j + 1)});
      j = k;
    }
    if (!L.tokens.empty()) out.push_back(std::move(L));
    if (end == text.size()) break;
    i = end + 1;
    ++lineno;
  }
  return out;
}

[[noreturn]] void fail(int line, int col, const std::string& msg) {
  throw ParseError({line, col, msg});
}

[[noreturn]] void fail(const Token& t, const std::string& msg) {
  fail(t.line, t.col, msg);
}

// ---- raw statement collection ------------------------------------------

struct RawBlock {
  std::string kind, name;
  int line = 0, col = 0;
  std::vector<Line> statements;
};

std::vector<RawBlock> split_blocks(const std::vector<Line>& lines) {
  std::vector<RawBlock> out;
  for (const auto& L : lines) {
    const auto& t0 = L.tokens[0];
    if (t0.text.front() == '[') {
      // allow "[kind NAME]" split across tokens
      std::string joined;
      for (const auto& t : L.tokens) {
        if (!joined.empty()) joined += ' ';
        joined += t.text;
      }
      if (joined.back() != ']') fail(t0, "block header must end with ']'");
      std::string inner = joined.substr(1, joined.size() - 2);
      std::istringstream ss(inner);
      RawBlock b;
      b.line = t0.line;
      b.col = t0.col;
      if (!(ss >> b.kind >> b.name))
        fail(t0, "block header must be [kind NAME]");
      std::string extra;
      if (ss >> extra) fail(t0, "unexpected token in block header");
      out.push_back(std::move(b));
    } else {
      if (out.empty()) fail(t0, "statement outside of a block");
      out.back().statements.push_back(L);
    }
  }
  return out;
}

// ---- value parsing -------------------------------------------------------

long parse_int(const Token& t) {
  long v = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || p != t.text.data() + t.text.size())
    fail(t, "expected an integer, got '" + t.text + "'");
  return v;
}

/// Matrices: a value like [[re,im;re,im;...],[...]] possibly spread over
/// several whitespace-separated tokens. Entries are "re,im" pairs separated
/// by ';' in row-major order; matrices are separated by ',' at depth 1.
std::vector<MatC> parse_matrices(const std::vector<Token>& toks, size_t from,
                                 int rows, int cols) {
  std::string s;
  for (size_t i = from; i < toks.size(); ++i) s += toks[i].text;
  const Token& t0 = toks[from];
  if (s.empty() || s.front() != '[') fail(t0, "matrix list must start with '['");

  std::vector<MatC> out;
  size_t i = 1;  // after outer '['
  auto strict_num = [&](const std::string& str) {
    double v = 0;
    auto [p, ec] = std::from_chars(str.data(), str.data() + str.size(), v);
    if (ec != std::errc() || p != str.data() + str.size())
      fail(t0, "bad number '" + str + "' in matrix entry");
    return v;
  };
  auto parse_entry_list = [&](size_t& pos) {
    std::vector<std::complex<double>> entries;
    std::string cur;
    for (;; ++pos) {
      if (pos >= s.size()) fail(t0, "unterminated matrix");
      char ch = s[pos];
      if (ch == ';' || ch == ']') {
        if (!cur.empty()) {
          size_t comma = cur.find(',');
          if (comma == std::string::npos)
            fail(t0, "matrix entry must be re,im");
          entries.emplace_back(strict_num(cur.substr(0, comma)),
                               strict_num(cur.substr(comma + 1)));
          cur.clear();
        }
        if (ch == ']') {
          ++pos;
          break;
        }
      } else {
        cur += ch;
      }
    }
    return entries;
  };

  while (i < s.size() && s[i] != ']') {
    if (s[i] == ',') {
      ++i;
      continue;
    }
    if (s[i] != '[') fail(t0, "expected '[' to open a matrix");
    ++i;
    auto entries = parse_entry_list(i);
    if (static_cast<int>(entries.size()) != rows * cols)
      fail(t0, "matrix has " + std::to_string(entries.size()) +
                   " entries, expected " + std::to_string(rows * cols));
    MatC m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m(r, c) = entries[r * cols + c];
    out.push_back(std::move(m));
  }
  if (i >= s.size() || s[i] != ']') fail(t0, "matrix list must end with ']'");
  return out;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_matrices(const std::vector<MatC>& ms) {
  std::string out = "[";
  for (size_t k = 0; k < ms.size(); ++k) {
    if (k) out += ",";
    out += "[";
    const MatC& m = ms[k];
    bool first = true;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        if (!first) out += ";";
        out += format_number(m(r, c).real()) + "," + format_number(m(r, c).imag());
        first = false;
      }
    out += "]";
  }
  out += "]";
  return out;
}

// ---- block elaboration ---------------------------------------------------

struct NameTable {
  std::map<std::string, ElemId> ids;
  std::vector<std::string> names;

  ElemId get(const Token& t) const {
    auto it = ids.find(t.text);
    if (it == ids.end()) fail(t, "unknown element '" + t.text + "'");
    return it->second;
  }
};

GroupoidBlock elaborate_groupoid(const RawBlock& raw) {
  NameTable nt;
  // first pass: the element list
  for (const auto& st : raw.statements) {
    if (st.tokens[0].text != "elements") continue;
    if (st.tokens.size() < 3 || st.tokens[1].text != "=")
      fail(st.tokens[0], "expected: elements = a b c ...");
    for (size_t i = 2; i < st.tokens.size(); ++i) {
      const auto& t = st.tokens[i];
      if (!nt.ids.emplace(t.text, static_cast<ElemId>(nt.names.size())).second)
        fail(t, "duplicate element '" + t.text + "'");
      nt.names.push_back(t.text);
    }
  }
  if (nt.names.empty())
    fail(raw.line, raw.col, "groupoid block needs an elements statement");

  GroupoidBuilder b(static_cast<int>(nt.names.size()));
  for (size_t i = 0; i < nt.names.size(); ++i)
    b.label(static_cast<ElemId>(i), nt.names[i]);

  for (const auto& st : raw.statements) {
    const auto& key = st.tokens[0];
    auto expect = [&](size_t n, const char* usage) {
      if (st.tokens.size() != n) fail(key, std::string("expected: ") + usage);
    };
    try {
      if (key.text == "elements") {
        continue;
      } else if (key.text == "units") {
        if (st.tokens.size() < 3 || st.tokens[1].text != "=")
          fail(key, "expected: units = u v ...");
        for (size_t i = 2; i < st.tokens.size(); ++i) b.unit(nt.get(st.tokens[i]));
      } else if (key.text == "src") {
        expect(4, "src a = u");
        b.src(nt.get(st.tokens[1]), nt.get(st.tokens[3]));
      } else if (key.text == "rng") {
        expect(4, "rng a = u");
        b.rng(nt.get(st.tokens[1]), nt.get(st.tokens[3]));
      } else if (key.text == "inv") {
        expect(4, "inv a = b");
        b.inv(nt.get(st.tokens[1]), nt.get(st.tokens[3]));
      } else if (key.text == "mul") {
        expect(5, "mul a b = c");
        b.mul(nt.get(st.tokens[1]), nt.get(st.tokens[2]), nt.get(st.tokens[4]));
      } else {
        fail(key, "unknown statement '" + key.text + "' in groupoid block");
      }
    } catch (const StructureError& e) {
      fail(key, e.what());
    }
  }
  GroupoidBlock out;
  out.name = raw.name;
  try {
    out.groupoid = b.build();
  } catch (const StructureError& e) {
    fail(raw.line, raw.col, e.what());
  }
  return out;
}

const Token& ref_value(const RawBlock& raw, const std::string& key) {
  for (const auto& st : raw.statements)
    if (st.tokens[0].text == key) {
      if (st.tokens.size() != 3 || st.tokens[1].text != "=")
        fail(st.tokens[0], "expected: " + key + " = name");
      return st.tokens[2];
    }
  fail(raw.line, raw.col, "block needs a '" + key + " = ...' statement");
}

LeftActionBlock elaborate_left_action(const RawBlock& raw, const Document& doc) {
  const Token& ht = ref_value(raw, "H");
  const Token& xt = ref_value(raw, "X");
  const auto* hb = doc.groupoid(ht.text);
  if (!hb) fail(ht, "unknown groupoid '" + ht.text + "'");
  const auto* xb = doc.groupoid(xt.text);
  if (!xb) fail(xt, "unknown groupoid '" + xt.text + "'");
  const auto& H = *hb->groupoid;
  const auto& X = *xb->groupoid;

  auto h_id = [&](const Token& t) {
    auto v = H.find_label(t.text);
    if (!v) fail(t, "unknown element '" + t.text + "' of " + ht.text);
    return *v;
  };
  auto x_id = [&](const Token& t) {
    auto v = X.find_label(t.text);
    if (!v) fail(t, "unknown element '" + t.text + "' of " + xt.text);
    return *v;
  };

  std::vector<ElemId> rho0(X.size(), -1);
  for (const auto& st : raw.statements)
    if (st.tokens[0].text == "rho0") {
      if (st.tokens.size() != 4 || st.tokens[2].text != "=")
        fail(st.tokens[0], "expected: rho0 u = w");
      rho0[x_id(st.tokens[1])] = h_id(st.tokens[3]);
    }
  for (ElemId u : X.units())
    if (rho0[u] < 0)
      fail(raw.line, raw.col,
           "rho0 missing for unit '" + X.label(u) + "'");

  LeftActionBlock out;
  out.name = raw.name;
  out.h_name = ht.text;
  out.x_name = xt.text;
  try {
    out.action = LeftSelfSimilarAction(hb->groupoid, xb->groupoid, rho0);
  } catch (const StructureError& e) {
    fail(raw.line, raw.col, e.what());
  }

  for (const auto& st : raw.statements) {
    const auto& key = st.tokens[0];
    if (key.text == "act") {
      if (st.tokens.size() != 5 || st.tokens[3].text != "=")
        fail(key, "expected: act h x = y");
      out.action.set_act(h_id(st.tokens[1]), x_id(st.tokens[2]),
                         x_id(st.tokens[4]));
    } else if (key.text == "restr") {
      if (st.tokens.size() != 5 || st.tokens[3].text != "=")
        fail(key, "expected: restr h x = k");
      out.action.set_restr(h_id(st.tokens[1]), x_id(st.tokens[2]),
                           h_id(st.tokens[4]));
    } else if (key.text != "H" && key.text != "X" && key.text != "rho0") {
      fail(key, "unknown statement '" + key.text + "' in left-action block");
    }
  }
  return out;
}

RightActionBlock elaborate_right_action(const RawBlock& raw, const Document& doc) {
  const Token& gt = ref_value(raw, "G");
  const Token& xt = ref_value(raw, "X");
  const auto* gb = doc.groupoid(gt.text);
  if (!gb) fail(gt, "unknown groupoid '" + gt.text + "'");
  const auto* xb = doc.groupoid(xt.text);
  if (!xb) fail(xt, "unknown groupoid '" + xt.text + "'");
  const auto& G = *gb->groupoid;
  const auto& X = *xb->groupoid;

  auto g_id = [&](const Token& t) {
    auto v = G.find_label(t.text);
    if (!v) fail(t, "unknown element '" + t.text + "' of " + gt.text);
    return *v;
  };
  auto x_id = [&](const Token& t) {
    auto v = X.find_label(t.text);
    if (!v) fail(t, "unknown element '" + t.text + "' of " + xt.text);
    return *v;
  };

  std::vector<ElemId> sigma0(X.size(), -1);
  for (const auto& st : raw.statements)
    if (st.tokens[0].text == "rho0") {
      if (st.tokens.size() != 4 || st.tokens[2].text != "=")
        fail(st.tokens[0], "expected: rho0 u = w");
      sigma0[x_id(st.tokens[1])] = g_id(st.tokens[3]);
    }
  for (ElemId u : X.units())
    if (sigma0[u] < 0)
      fail(raw.line, raw.col, "rho0 missing for unit '" + X.label(u) + "'");

  RightActionBlock out;
  out.name = raw.name;
  out.g_name = gt.text;
  out.x_name = xt.text;
  try {
    out.action = RightSelfSimilarAction(gb->groupoid, xb->groupoid, sigma0);
  } catch (const StructureError& e) {
    fail(raw.line, raw.col, e.what());
  }

  for (const auto& st : raw.statements) {
    const auto& key = st.tokens[0];
    if (key.text == "act") {
      if (st.tokens.size() != 5 || st.tokens[3].text != "=")
        fail(key, "expected: act x t = y");
      out.action.set_act(x_id(st.tokens[1]), g_id(st.tokens[2]),
                         x_id(st.tokens[4]));
    } else if (key.text == "restr") {
      if (st.tokens.size() != 5 || st.tokens[3].text != "=")
        fail(key, "expected: restr x t = s");
      out.action.set_restr(x_id(st.tokens[1]), g_id(st.tokens[2]),
                           g_id(st.tokens[4]));
    } else if (key.text != "G" && key.text != "X" && key.text != "rho0") {
      fail(key, "unknown statement '" + key.text + "' in right-action block");
    }
  }
  return out;
}

FellBundleBlock elaborate_fell_bundle(const RawBlock& raw, const Document& doc) {
  const Token& bt = ref_value(raw, "base");
  const auto* gb = doc.groupoid(bt.text);
  if (!gb) fail(bt, "unknown groupoid '" + bt.text + "'");
  const auto& G = *gb->groupoid;

  auto el_id = [&](const Token& t) {
    auto v = G.find_label(t.text);
    if (!v) fail(t, "unknown element '" + t.text + "' of " + bt.text);
    return *v;
  };

  std::vector<int> dim(G.size(), -1);
  for (const auto& st : raw.statements)
    if (st.tokens[0].text == "dim") {
      if (st.tokens.size() != 4 || st.tokens[2].text != "=")
        fail(st.tokens[0], "expected: dim u = 2");
      ElemId u = el_id(st.tokens[1]);
      if (!G.is_unit(u)) fail(st.tokens[1], "dim applies to units only");
      dim[u] = static_cast<int>(parse_int(st.tokens[3]));
    }
  for (ElemId u : G.units())
    if (dim[u] <= 0)
      fail(raw.line, raw.col, "dim missing for unit '" + G.label(u) + "'");

  auto bundle = std::make_shared<FellBundle>();
  bundle->base = gb->groupoid;
  bundle->fibers.resize(G.size());
  std::vector<bool> seen(G.size(), false);
  for (const auto& st : raw.statements) {
    const auto& key = st.tokens[0];
    if (key.text == "basis") {
      if (st.tokens.size() < 4 || st.tokens[2].text != "=")
        fail(key, "expected: basis x = [[...],...]");
      ElemId x = el_id(st.tokens[1]);
      seen[x] = true;
      bundle->fibers[x] =
          parse_matrices(st.tokens, 3, dim[G.rng(x)], dim[G.src(x)]);
    } else if (key.text != "base" && key.text != "dim") {
      fail(key, "unknown statement '" + key.text + "' in fell-bundle block");
    }
  }
  for (ElemId x = 0; x < G.size(); ++x)
    if (!seen[x])
      fail(raw.line, raw.col, "basis missing for element '" + G.label(x) + "'");

  FellBundleBlock out;
  out.name = raw.name;
  out.base_name = bt.text;
  out.bundle = std::move(bundle);
  return out;
}

FellActionBlock elaborate_fell_action(const RawBlock& raw, const Document& doc) {
  const Token& at = ref_value(raw, "action");
  const Token& bt = ref_value(raw, "bundle");
  const auto* ab = doc.left_action(at.text);
  if (!ab) fail(at, "unknown left-action '" + at.text + "'");
  const auto* bb = doc.fell_bundle(bt.text);
  if (!bb) fail(bt, "unknown fell-bundle '" + bt.text + "'");
  if (ab->x_name != bb->base_name)
    fail(at, "action and bundle must live over the same groupoid");

  const auto& H = *ab->action.H();
  const auto& X = *ab->action.X();
  auto h_id = [&](const Token& t) {
    auto v = H.find_label(t.text);
    if (!v) fail(t, "unknown element '" + t.text + "'");
    return *v;
  };
  auto x_id = [&](const Token& t) {
    auto v = X.find_label(t.text);
    if (!v) fail(t, "unknown element '" + t.text + "'");
    return *v;
  };

  auto fa = std::make_shared<FellLeftAction>();
  fa->H = ab->action.H();
  fa->B = bb->bundle;
  fa->underlying = ab->action;
  for (const auto& st : raw.statements) {
    const auto& key = st.tokens[0];
    if (key.text == "map") {
      if (st.tokens.size() < 5 || st.tokens[3].text != "=")
        fail(key, "expected: map h x = [[...],...]");
      ElemId h = h_id(st.tokens[1]);
      ElemId x = x_id(st.tokens[2]);
      ElemId hx = ab->action.act_opt(h, x).value_or(-1);
      if (hx < 0) fail(key, "map given off the action domain");
      int rows = bb->bundle->fibers[hx].empty()
                     ? 0
                     : static_cast<int>(bb->bundle->fibers[hx][0].rows());
      int cols = bb->bundle->fibers[hx].empty()
                     ? 0
                     : static_cast<int>(bb->bundle->fibers[hx][0].cols());
      fa->set_images(h, x, parse_matrices(st.tokens, 4, rows, cols));
    } else if (key.text != "action" && key.text != "bundle") {
      fail(key, "unknown statement '" + key.text + "' in fell-action block");
    }
  }

  FellActionBlock out;
  out.name = raw.name;
  out.action_name = at.text;
  out.bundle_name = bt.text;
  out.action = std::move(fa);
  return out;
}

DrSystemBlock elaborate_dr_system(const RawBlock& raw) {
  DrSystemBlock out;
  out.name = raw.name;
  int points = -1;
  std::string s_spec, t_spec;
  int s_line = raw.line, t_line = raw.line;
  for (const auto& st : raw.statements) {
    const auto& key = st.tokens[0];
    if (key.text == "points") {
      if (st.tokens.size() != 3 || st.tokens[1].text != "=")
        fail(key, "expected: points = n");
      points = static_cast<int>(parse_int(st.tokens[2]));
    } else if (key.text == "perm") {
      if (st.tokens.size() < 4 || st.tokens[2].text != "=")
        fail(key, "expected: perm S = (0 1)(2 3)");
      std::string spec;
      for (size_t i = 3; i < st.tokens.size(); ++i) {
        if (!spec.empty()) spec += ' ';
        spec += st.tokens[i].text;
      }
      if (st.tokens[1].text == "S") {
        s_spec = spec;
        s_line = key.line;
      } else if (st.tokens[1].text == "T") {
        t_spec = spec;
        t_line = key.line;
      } else {
        fail(st.tokens[1], "perm name must be S or T");
      }
    } else {
      fail(key, "unknown statement '" + key.text + "' in dr-system block");
    }
  }
  if (points <= 0) fail(raw.line, raw.col, "dr-system needs points = n");
  out.system.n = points;
  try {
    out.system.S = s_spec.empty() ? perm::identity(points)
                                  : perm::parse_cycles(s_spec, points);
  } catch (const std::exception& e) {
    fail(s_line, 1, e.what());
  }
  try {
    out.system.T = t_spec.empty() ? perm::identity(points)
                                  : perm::parse_cycles(t_spec, points);
  } catch (const std::exception& e) {
    fail(t_line, 1, e.what());
  }
  return out;
}

}  // namespace

const Block* Document::find(const std::string& name) const {
  for (const auto& b : blocks)
    if (name_of(b) == name) return &b;
  return nullptr;
}

const std::string& Document::name_of(const Block& b) {
  return std::visit([](const auto& v) -> const std::string& { return v.name; },
                    b);
}

const GroupoidBlock* Document::groupoid(const std::string& name) const {
  const Block* b = find(name);
  return b ? std::get_if<GroupoidBlock>(b) : nullptr;
}
const LeftActionBlock* Document::left_action(const std::string& name) const {
  const Block* b = find(name);
  return b ? std::get_if<LeftActionBlock>(b) : nullptr;
}
const RightActionBlock* Document::right_action(const std::string& name) const {
  const Block* b = find(name);
  return b ? std::get_if<RightActionBlock>(b) : nullptr;
}
const FellBundleBlock* Document::fell_bundle(const std::string& name) const {
  const Block* b = find(name);
  return b ? std::get_if<FellBundleBlock>(b) : nullptr;
}
const FellActionBlock* Document::fell_action(const std::string& name) const {
  const Block* b = find(name);
  return b ? std::get_if<FellActionBlock>(b) : nullptr;
}
const DrSystemBlock* Document::dr_system(const std::string& name) const {
  const Block* b = find(name);
  return b ? std::get_if<DrSystemBlock>(b) : nullptr;
}

Document parse(const std::string& text) {
  Document doc;
  auto raws = split_blocks(tokenize(text));
  for (const auto& raw : raws) {
    if (doc.find(raw.name))
      fail(raw.line, raw.col, "duplicate block name '" + raw.name + "'");
    if (raw.kind == "groupoid")
      doc.blocks.emplace_back(elaborate_groupoid(raw));
    else if (raw.kind == "left-action")
      doc.blocks.emplace_back(elaborate_left_action(raw, doc));
    else if (raw.kind == "right-action")
      doc.blocks.emplace_back(elaborate_right_action(raw, doc));
    else if (raw.kind == "fell-bundle")
      doc.blocks.emplace_back(elaborate_fell_bundle(raw, doc));
    else if (raw.kind == "fell-action")
      doc.blocks.emplace_back(elaborate_fell_action(raw, doc));
    else if (raw.kind == "dr-system")
      doc.blocks.emplace_back(elaborate_dr_system(raw));
    else
      fail(raw.line, raw.col, "unknown block kind '" + raw.kind + "'");
  }
  return doc;
}

std::string print_groupoid_block(const std::string& name,
                                 const FiniteGroupoid& g) {
  std::string out = "[groupoid " + name + "]\n";
  out += "elements =";
  for (ElemId e = 0; e < g.size(); ++e) out += " " + g.label(e);
  out += "\nunits =";
  for (ElemId u : g.units()) out += " " + g.label(u);
  out += "\n";
  for (ElemId e = 0; e < g.size(); ++e)
    out += "src " + g.label(e) + " = " + g.label(g.src(e)) + "\n";
  for (ElemId e = 0; e < g.size(); ++e)
    out += "rng " + g.label(e) + " = " + g.label(g.rng(e)) + "\n";
  for (ElemId e = 0; e < g.size(); ++e)
    out += "inv " + g.label(e) + " = " + g.label(g.inv(e)) + "\n";
  for (ElemId a = 0; a < g.size(); ++a)
    for (ElemId b = 0; b < g.size(); ++b)
      if (auto c = g.mul(a, b))
        out += "mul " + g.label(a) + " " + g.label(b) + " = " + g.label(*c) + "\n";
  return out;
}

namespace {

std::string print_left_action_block(const LeftActionBlock& b) {
  const auto& H = *b.action.H();
  const auto& X = *b.action.X();
  std::string out = "[left-action " + b.name + "]\n";
  out += "H = " + b.h_name + "\nX = " + b.x_name + "\n";
  for (ElemId u : X.units())
    out += "rho0 " + X.label(u) + " = " + H.label(b.action.rho0(u)) + "\n";
  for (ElemId h = 0; h < H.size(); ++h)
    for (ElemId x = 0; x < X.size(); ++x) {
      if (!b.action.in_domain(h, x)) continue;
      if (auto y = b.action.act_opt(h, x))
        out += "act " + H.label(h) + " " + X.label(x) + " = " + X.label(*y) + "\n";
      if (auto k = b.action.restr_opt(h, x))
        out += "restr " + H.label(h) + " " + X.label(x) + " = " + H.label(*k) + "\n";
    }
  return out;
}

std::string print_right_action_block(const RightActionBlock& b) {
  const auto& G = *b.action.G();
  const auto& X = *b.action.X();
  std::string out = "[right-action " + b.name + "]\n";
  out += "G = " + b.g_name + "\nX = " + b.x_name + "\n";
  for (ElemId u : X.units())
    out += "rho0 " + X.label(u) + " = " + G.label(b.action.sigma0(u)) + "\n";
  for (ElemId x = 0; x < X.size(); ++x)
    for (ElemId t = 0; t < G.size(); ++t) {
      if (!b.action.in_domain(x, t)) continue;
      if (auto y = b.action.act_opt(x, t))
        out += "act " + X.label(x) + " " + G.label(t) + " = " + X.label(*y) + "\n";
      if (auto s = b.action.restr_opt(x, t))
        out += "restr " + X.label(x) + " " + G.label(t) + " = " + G.label(*s) + "\n";
    }
  return out;
}

std::string print_fell_bundle_block(const FellBundleBlock& b) {
  const auto& G = *b.bundle->base;
  std::string out = "[fell-bundle " + b.name + "]\n";
  out += "base = " + b.base_name + "\n";
  for (ElemId u : G.units()) {
    int d = b.bundle->fibers[u].empty()
                ? 1
                : static_cast<int>(b.bundle->fibers[u][0].rows());
    out += "dim " + G.label(u) + " = " + std::to_string(d) + "\n";
  }
  for (ElemId x = 0; x < G.size(); ++x)
    out += "basis " + G.label(x) + " = " + format_matrices(b.bundle->fibers[x]) +
           "\n";
  return out;
}

std::string print_fell_action_block(const FellActionBlock& b) {
  const auto& H = *b.action->H;
  const auto& X = *b.action->B->base;
  std::string out = "[fell-action " + b.name + "]\n";
  out += "action = " + b.action_name + "\nbundle = " + b.bundle_name + "\n";
  for (ElemId h = 0; h < H.size(); ++h)
    for (ElemId x = 0; x < X.size(); ++x) {
      auto it = b.action->images.find(b.action->key(h, x));
      if (it == b.action->images.end()) continue;
      out += "map " + H.label(h) + " " + X.label(x) + " = " +
             format_matrices(it->second) + "\n";
    }
  return out;
}

std::string print_dr_block(const DrSystemBlock& b) {
  std::string out = "[dr-system " + b.name + "]\n";
  out += "points = " + std::to_string(b.system.n) + "\n";
  out += "perm S = " + perm::format_cycles(b.system.S) + "\n";
  out += "perm T = " + perm::format_cycles(b.system.T) + "\n";
  return out;
}

}  // namespace

std::string print(const Document& doc) {
  std::string out;
  for (const auto& b : doc.blocks) {
    if (!out.empty()) out += "\n";
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, GroupoidBlock>)
            out += print_groupoid_block(v.name, *v.groupoid);
          else if constexpr (std::is_same_v<T, LeftActionBlock>)
            out += print_left_action_block(v);
          else if constexpr (std::is_same_v<T, RightActionBlock>)
            out += print_right_action_block(v);
          else if constexpr (std::is_same_v<T, FellBundleBlock>)
            out += print_fell_bundle_block(v);
          else if constexpr (std::is_same_v<T, FellActionBlock>)
            out += print_fell_action_block(v);
          else
            out += print_dr_block(v);
        },
        b);
  }
  return out;
}

}  // namespace gpdkit::dsl
