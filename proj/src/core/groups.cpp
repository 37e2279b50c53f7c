#include "core/groups.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace kq {

std::optional<size_t> MatrixGroup::find(const ProjTransform& g) const {
  auto it = index.find(g.key());
  if (it == index.end()) return std::nullopt;
  return it->second;
}

MatrixGroup close(const std::vector<NamedGen>& generators, size_t cap) {
  if (generators.empty()) throw GroupError("no generators");
  if (cap < 1) throw GroupError("cap must be positive");
  MatrixGroup G;
  G.generators = generators;
  size_t n = generators[0].matrix.size();
  const FieldDescriptor& f = generators[0].matrix.field();
  ProjTransform id = ProjTransform::identity(f, n);
  G.elements.push_back(id.proj_normal());
  G.words.push_back("");
  G.index[G.elements[0].key()] = 0;
  for (size_t head = 0; head < G.elements.size(); ++head) {
    for (auto& gen : generators) {
      ProjTransform prod = (G.elements[head] * gen.matrix).proj_normal();
      std::string key = prod.key();
      if (G.index.count(key)) continue;
      if (G.elements.size() >= cap)
        throw GroupError("closure exceeds cap of " + std::to_string(cap));
      G.index[key] = G.elements.size();
      G.elements.push_back(prod);
      std::string w = G.words[head];
      if (!w.empty()) w += "*";
      G.words.push_back(w + gen.name);
    }
  }
  return G;
}

OrbitResult orbit(const MatrixGroup& G, const ProjPoint& p) {
  std::set<ProjPoint> seen;
  for (auto& g : G.elements) seen.insert(g.apply(p));
  OrbitResult r;
  r.points.assign(seen.begin(), seen.end());
  if (G.order() % r.points.size() != 0)
    throw GroupError("orbit length does not divide group order");
  r.stabilizer_order = G.order() / r.points.size();
  return r;
}

namespace {

struct WordParser {
  const std::string& s;
  size_t pos = 0;
  const std::vector<NamedGen>& gens;

  void skip() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& m) { throw GroupError(m); }

  ProjTransform parse() {
    ProjTransform r = word();
    skip();
    if (pos != s.size()) fail("unexpected trailing input in word");
    return r;
  }

  ProjTransform word() {
    ProjTransform r = factor();
    for (;;) {
      skip();
      if (eat('*')) {
        r = r * factor();
        continue;
      }
      if (pos < s.size() &&
          (std::isalpha((unsigned char)s[pos]) || s[pos] == '(' ||
           s[pos] == '[')) {
        r = r * factor();
        continue;
      }
      return r;
    }
  }

  ProjTransform factor() {
    ProjTransform b = atom();
    skip();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      size_t start = pos;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
      if (pos == start) fail("expected exponent");
      long e = std::stol(s.substr(start, pos - start));
      ProjTransform base = neg ? b.inverse() : b;
      ProjTransform r =
          ProjTransform::identity(base.field(), base.size());
      for (long k = 0; k < e; ++k) r = r * base;
      return r;
    }
    return b;
  }

  ProjTransform atom() {
    skip();
    if (pos >= s.size()) fail("unexpected end of word");
    if (eat('(')) {
      ProjTransform r = word();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (eat('[')) {
      ProjTransform u = word();
      if (!eat(',')) fail("expected ',' in commutator");
      ProjTransform v = word();
      if (!eat(']')) fail("expected ']'");
      return u.inverse() * v.inverse() * u * v;
    }
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
      ++pos;
    std::string name = s.substr(start, pos - start);
    if (name.empty()) fail("expected generator name");
    for (auto& g : gens)
      if (g.name == name) return g.matrix;
    fail("unknown generator '" + name + "'");
  }
};

}  // namespace

ProjTransform evaluate_word(const std::string& word,
                            const std::vector<NamedGen>& generators) {
  if (generators.empty()) throw GroupError("no generators");
  WordParser p{word, 0, generators};
  return p.parse();
}

std::vector<RelationCheck> check_word_relations(
    const MatrixGroup& G, const std::vector<std::string>& relations,
    const MatrixGroup* modulo) {
  std::vector<RelationCheck> out;
  size_t n = G.generators[0].matrix.size();
  const FieldDescriptor& f = G.generators[0].matrix.field();
  ProjTransform id = ProjTransform::identity(f, n);
  for (auto& rel : relations) {
    ProjTransform v = evaluate_word(rel, G.generators);
    bool ok = modulo ? modulo->contains(v) : v.proj_equal(id);
    out.push_back({rel, ok});
  }
  return out;
}

std::vector<size_t> perm_on_polys(const ProjTransform& g,
                                  const std::vector<MultiPoly>& forms) {
  std::vector<size_t> perm(forms.size(), forms.size());
  std::vector<bool> hit(forms.size(), false);
  // image convention: perm[k] = j when g maps the zero set of forms[k]
  // onto that of forms[j]
  ProjTransform ginv = g.inverse();
  for (size_t k = 0; k < forms.size(); ++k) {
    MultiPoly img = poly_apply_transform(forms[k], ginv);
    for (size_t j = 0; j < forms.size(); ++j) {
      if (img.proportionality(forms[j])) {
        if (hit[j]) throw GroupError("action is not a permutation");
        perm[k] = j;
        hit[j] = true;
        break;
      }
    }
    if (perm[k] == forms.size())
      throw GroupError("image of form " + std::to_string(k + 1) +
                       " matches no listed form");
  }
  return perm;
}

std::string cycle_notation(const std::vector<size_t>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::string out;
  for (size_t i = 0; i < perm.size(); ++i) {
    if (seen[i] || perm[i] == i) continue;
    std::string cyc = "(" + std::to_string(i + 1);
    seen[i] = true;
    for (size_t j = perm[i]; j != i; j = perm[j]) {
      seen[j] = true;
      cyc += " " + std::to_string(j + 1);
    }
    out += cyc + ")";
  }
  return out.empty() ? "id" : out;
}

LiftedAction lift_by_character(const MatrixGroup& G, const MultiPoly& F,
                               const SignCharacter& rho) {
  for (auto& gen : G.generators) {
    if (poly_apply_transform(F, gen.matrix) != F)
      throw GroupError("generator " + gen.name +
                       " does not preserve the quartic exactly");
    auto it = rho.values.find(gen.name);
    if (it == rho.values.end())
      throw GroupError("character missing generator " + gen.name);
    if (it->second != 1 && it->second != -1)
      throw GroupError("character values must be +-1");
  }
  LiftedAction act;
  act.group = &G;
  act.signs.assign(G.order(), 0);
  act.signs[0] = 1;
  // propagate along closure words; conflicts mean rho is not a homomorphism
  for (size_t e = 1; e < G.order(); ++e) {
    int s = 1;
    const std::string& w = G.words[e];
    size_t p = 0;
    while (p < w.size()) {
      size_t q = w.find('*', p);
      if (q == std::string::npos) q = w.size();
      s *= rho.values.at(w.substr(p, q - p));
      p = q + 1;
    }
    act.signs[e] = s;
  }
  // homomorphism check on the multiplication table restricted to generators
  for (size_t e = 0; e < G.order(); ++e)
    for (size_t k = 0; k < G.generators.size(); ++k) {
      ProjTransform prod =
          (G.elements[e] * G.generators[k].matrix).proj_normal();
      size_t idx = *G.find(prod);
      int expect = act.signs[e] * rho.values.at(G.generators[k].name);
      if (act.signs[idx] != expect)
        throw GroupError("character does not extend to a homomorphism");
    }
  return act;
}

size_t element_order(const ProjTransform& g, size_t cap) {
  ProjTransform id = ProjTransform::identity(g.field(), g.size());
  ProjTransform p = g;
  for (size_t k = 1; k <= cap; ++k) {
    if (p.proj_equal(id)) return k;
    p = p * g;
  }
  throw GroupError("element order exceeds cap");
}

GroupProfile group_profile(const MatrixGroup& G) {
  GroupProfile prof;
  prof.order = G.order();
  prof.exponent = 1;
  for (auto& g : G.elements) {
    size_t o = element_order(g, G.order() + 1);
    prof.histogram[o] += 1;
    prof.exponent = std::lcm(prof.exponent, o);
  }
  prof.center_order = 0;
  for (auto& g : G.elements) {
    bool central = true;
    for (auto& gen : G.generators)
      if (!(g * gen.matrix).proj_equal(gen.matrix * g)) {
        central = false;
        break;
      }
    if (central) ++prof.center_order;
  }
  return prof;
}

std::vector<NamedGen> heisenberg_generators(const FieldDescriptor& f) {
  auto m = [&](std::vector<std::vector<std::string>> rows) {
    return ProjTransform::parse(rows, f);
  };
  return {
      {"A1", m({{"-1", "0", "0", "0"},
                {"0", "1", "0", "0"},
                {"0", "0", "-1", "0"},
                {"0", "0", "0", "1"}})},
      {"A2", m({{"-1", "0", "0", "0"},
                {"0", "-1", "0", "0"},
                {"0", "0", "1", "0"},
                {"0", "0", "0", "1"}})},
      {"A3", m({{"0", "1", "0", "0"},
                {"1", "0", "0", "0"},
                {"0", "0", "0", "1"},
                {"0", "0", "1", "0"}})},
      {"A4", m({{"0", "0", "0", "1"},
                {"0", "0", "1", "0"},
                {"0", "1", "0", "0"},
                {"1", "0", "0", "0"}})},
  };
}

}  // namespace kq
