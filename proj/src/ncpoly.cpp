#include "qpoincare/ncpoly.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qpoincare {

// ---------------------------------------------------------------------------
// Alphabet

namespace {

struct SectorInfo {
  Sector sector;
  const char *prefix;
};

constexpr SectorInfo kMatrixSectors[] = {
    {Sector::P, "P"}, {Sector::G, "G"}, {Sector::Gb, "Gb"}, {Sector::T, "T"},
    {Sector::Tb, "Tb"}, {Sector::W, "W"}, {Sector::J, "J"}, {Sector::Jd, "Jd"},
};

} // namespace

Alphabet::Alphabet() {
  auto push = [&](std::string name, Sector s, int r, int c) {
    auto id = static_cast<GenId>(gens_.size());
    by_name_.emplace(name, id);
    gens_.push_back(Generator{id, std::move(name), s, r, c});
  };
  for (const auto &info : kMatrixSectors)
    for (int r = 1; r <= 2; ++r)
      for (int c = 1; c <= 2; ++c)
        push(std::string(info.prefix) + std::to_string(r) + std::to_string(c) +
                 (info.sector == Sector::J || info.sector == Sector::Jd ? "q" : ""),
             info.sector, r, c);
  for (int mu = 0; mu < 4; ++mu)
    push("P" + std::to_string(mu), Sector::PComp, mu, -1);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu + 1; nu < 4; ++nu)
      push("J" + std::to_string(mu) + std::to_string(nu), Sector::JComp, mu, nu);
}

const Alphabet &Alphabet::standard() {
  static const Alphabet instance;
  return instance;
}

std::optional<GenId> Alphabet::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end())
    return std::nullopt;
  return it->second;
}

GenId Alphabet::entry(Sector s, int row, int col) const {
  for (std::size_t k = 0; k < std::size(kMatrixSectors); ++k)
    if (kMatrixSectors[k].sector == s)
      return static_cast<GenId>(4 * k + 2 * (row - 1) + (col - 1));
  throw std::invalid_argument("sector has no matrix entries");
}

GenId Alphabet::p_component(int mu) const { return static_cast<GenId>(4 * std::size(kMatrixSectors) + mu); }

GenId Alphabet::j_component(int mu, int nu) const {
  if (mu >= nu)
    throw std::invalid_argument("j_component needs mu < nu");
  int k = 0;
  for (int m = 0; m < 4; ++m)
    for (int n = m + 1; n < 4; ++n, ++k)
      if (m == mu && n == nu)
        return static_cast<GenId>(4 * std::size(kMatrixSectors) + 4 + k);
  throw std::invalid_argument("bad J component");
}

// ---------------------------------------------------------------------------
// Word

std::string Word::str() const {
  if (letters_.empty())
    return "1";
  const auto &alpha = Alphabet::standard();
  std::string out;
  for (std::size_t k = 0; k < size(); ++k) {
    if (k)
      out += "*";
    out += alpha[(*this)[k]].name;
  }
  return out;
}

// ---------------------------------------------------------------------------
// NCPoly

NCPoly::NCPoly(const Scalar &c) {
  if (!c.is_zero())
    terms_.emplace_back(Word(), c);
}

NCPoly NCPoly::gen(GenId g) { return word(Word::single(g)); }

NCPoly NCPoly::gen(std::string_view name) {
  auto id = Alphabet::standard().find(name);
  if (!id)
    throw std::invalid_argument("unknown generator " + std::string(name));
  return gen(*id);
}

NCPoly NCPoly::word(const Word &w, const Scalar &c) {
  NCPoly p;
  if (!c.is_zero())
    p.terms_.emplace_back(w, c);
  return p;
}

NCPoly NCPoly::from_terms(std::vector<Term> terms) {
  NCPolyBuilder b;
  for (auto &[w, c] : terms)
    b.add(w, c);
  return b.build();
}

int NCPoly::degree() const {
  int d = -1;
  for (const auto &t : terms_)
    d = std::max<int>(d, static_cast<int>(t.first.size()));
  return d;
}

Scalar NCPoly::coefficient(const Word &w) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), w,
                             [](const Term &t, const Word &x) { return t.first < x; });
  if (it != terms_.end() && it->first == w)
    return it->second;
  return Scalar();
}

std::vector<GenId> NCPoly::support() const {
  std::set<GenId> s;
  for (const auto &t : terms_)
    for (std::size_t k = 0; k < t.first.size(); ++k)
      s.insert(t.first[k]);
  return {s.begin(), s.end()};
}

NCPoly NCPoly::operator-() const {
  NCPoly r = *this;
  for (auto &t : r.terms_)
    t.second = -t.second;
  return r;
}

NCPoly &NCPoly::operator+=(const NCPoly &o) {
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() && j != o.terms_.end()) {
    if (i->first == j->first) {
      Scalar c = i->second + j->second;
      if (!c.is_zero())
        out.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    } else if (i->first < j->first) {
      out.push_back(std::move(*i++));
    } else {
      out.push_back(*j++);
    }
  }
  for (; i != terms_.end(); ++i)
    out.push_back(std::move(*i));
  out.insert(out.end(), j, o.terms_.end());
  terms_ = std::move(out);
  return *this;
}

NCPoly &NCPoly::operator-=(const NCPoly &o) { return *this += -o; }

NCPoly operator*(const NCPoly &a, const NCPoly &b) {
  if (a.is_zero() || b.is_zero())
    return {};
  NCPolyBuilder acc;
  for (const auto &[wa, ca] : a.terms_)
    for (const auto &[wb, cb] : b.terms_)
      acc.add(wa * wb, ca * cb);
  return acc.build();
}

NCPoly NCPoly::scaled(const Scalar &c) const {
  if (c.is_zero())
    return {};
  NCPoly r = *this;
  for (auto &t : r.terms_)
    t.second *= c;
  return r;
}

NCPoly NCPoly::substitute(const Bindings &bindings) const {
  return map_coefficients([&](const Scalar &c) { return c.substitute(bindings); });
}

NCPoly NCPoly::map_coefficients(const std::function<Scalar(const Scalar &)> &f) const {
  NCPoly r;
  r.terms_.reserve(terms_.size());
  for (const auto &[w, c] : terms_) {
    Scalar nc = f(c);
    if (!nc.is_zero())
      r.terms_.emplace_back(w, std::move(nc));
  }
  return r;
}

NCPoly NCPoly::substitute_generators(const std::map<GenId, NCPoly> &table) const {
  NCPolyBuilder acc;
  for (const auto &[w, c] : terms_) {
    NCPoly img(c);
    for (std::size_t k = 0; k < w.size(); ++k) {
      auto it = table.find(w[k]);
      img = img * (it == table.end() ? NCPoly::gen(w[k]) : it->second);
    }
    acc.add(img);
  }
  return acc.build();
}

std::string NCPoly::str() const {
  if (terms_.empty())
    return "0";
  std::string out;
  for (const auto &[w, c] : terms_) {
    std::string cs = c.str();
    bool negative = false;
    if (c.is_constant() && c.constant().is_real() && sgn(c.constant().re()) < 0) {
      negative = true;
      cs = (-c).str();
    } else if (!c.is_constant() && cs.find_first_of("+- ") != std::string::npos && cs.front() != '(') {
      cs = "(" + cs + ")";
    }
    std::string term;
    if (w.empty())
      term = cs;
    else if (cs == "1")
      term = w.str();
    else
      term = cs + "*" + w.str();
    if (out.empty())
      out = negative ? "-" + term : term;
    else
      out += negative ? " - " + term : " + " + term;
  }
  return out;
}

NCPoly commutator(const NCPoly &a, const NCPoly &b) { return a * b - b * a; }

// ---------------------------------------------------------------------------
// NCPolyBuilder

void NCPolyBuilder::add(const Word &w, const Scalar &c) {
  if (c.is_zero())
    return;
  auto [it, inserted] = acc_.try_emplace(w, c);
  if (!inserted)
    it->second += c;
}

void NCPolyBuilder::add(const NCPoly &p, const Scalar &c) {
  for (const auto &[w, x] : p.terms())
    add(w, c.is_one() ? x : x * c);
}

void NCPolyBuilder::add_sandwich(const Word &left, const NCPoly &p, const Word &right, const Scalar &c) {
  for (const auto &[w, x] : p.terms())
    add(left * w * right, x * c);
}

NCPoly NCPolyBuilder::build() {
  NCPoly r;
  r.terms_.reserve(acc_.size());
  for (auto &[w, c] : acc_)
    if (!c.is_zero())
      r.terms_.emplace_back(w, std::move(c));
  acc_.clear();
  std::sort(r.terms_.begin(), r.terms_.end(),
            [](const NCPoly::Term &x, const NCPoly::Term &y) { return x.first < y.first; });
  return r;
}

// ---------------------------------------------------------------------------
// dagger

namespace {

NCPoly entry(Sector s, int r, int c) { return NCPoly::gen(Alphabet::standard().entry(s, r, c)); }

// Transposed entry (j,i) of the inverse of a unimodular Gamma-type matrix.
NCPoly gamma_bar_inverse_entry(int r, int c) {
  Scalar qm2 = Scalar::q_power(-2);
  if (r == 1 && c == 1)
    return entry(Sector::Gb, 2, 2);
  if (r == 1 && c == 2)
    return -(qm2 * entry(Sector::Gb, 1, 2));
  if (r == 2 && c == 1)
    return -(qm2 * entry(Sector::Gb, 2, 1));
  return qm2 * (entry(Sector::Gb, 1, 1) + (Scalar::q_power(2) - 1) * entry(Sector::Gb, 2, 2));
}

NCPoly gamma_inverse_entry(int r, int c) {
  Scalar q2 = Scalar::q_power(2);
  if (r == 1 && c == 1)
    return q2 * entry(Sector::G, 2, 2) - (q2 - 1) * entry(Sector::G, 1, 1);
  if (r == 1 && c == 2)
    return -(q2 * entry(Sector::G, 1, 2));
  if (r == 2 && c == 1)
    return -(q2 * entry(Sector::G, 2, 1));
  return entry(Sector::G, 1, 1);
}

NCPoly t_inverse_entry(Sector s, int r, int c) {
  if (r == 1 && c == 1)
    return entry(s, 2, 2);
  if (r == 1 && c == 2)
    return -(Scalar::q_power(-1) * entry(s, 1, 2));
  if (r == 2 && c == 1)
    return -(Scalar::q_power(1) * entry(s, 2, 1));
  return entry(s, 1, 1);
}

std::vector<NCPoly> build_dagger_table() {
  const auto &alpha = Alphabet::standard();
  std::vector<NCPoly> table(alpha.size());
  for (const auto &g : alpha.generators()) {
    int r = g.row, c = g.col;
    switch (g.sector) {
    case Sector::P:
    case Sector::W:
      table[g.id] = entry(g.sector, c, r);
      break;
    case Sector::G:
      table[g.id] = gamma_bar_inverse_entry(c, r);
      break;
    case Sector::Gb:
      table[g.id] = gamma_inverse_entry(c, r);
      break;
    case Sector::T:
      table[g.id] = t_inverse_entry(Sector::Tb, c, r);
      break;
    case Sector::Tb:
      table[g.id] = t_inverse_entry(Sector::T, c, r);
      break;
    case Sector::J:
      table[g.id] = entry(Sector::Jd, c, r);
      break;
    case Sector::Jd:
      table[g.id] = entry(Sector::J, c, r);
      break;
    case Sector::PComp:
    case Sector::JComp:
      table[g.id] = NCPoly::gen(g.id);
      break;
    }
  }
  return table;
}

} // namespace

NCPoly dagger_image(GenId g) {
  static const std::vector<NCPoly> table = build_dagger_table();
  return table.at(g);
}

NCPoly dagger(const NCPoly &x) {
  NCPolyBuilder acc;
  for (const auto &[w, c] : x.terms()) {
    NCPoly img(c.conj());
    for (std::size_t k = w.size(); k-- > 0;)
      img = img * dagger_image(w[k]);
    acc.add(img);
  }
  return acc.build();
}

} // namespace qpoincare
