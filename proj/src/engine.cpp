#include "qpoincare/engine.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace qpoincare {

// ---------------------------------------------------------------------------
// MonomialOrder

namespace {

struct SectorRank {
  Sector sector;
  std::array<int, 4> within; // rank of entries 11, 12, 21, 22 (larger = higher)
};

constexpr std::array<int, 4> kRowMajor = {3, 2, 1, 0};
constexpr std::array<int, 4> kReversed = {0, 1, 2, 3};

// Default precedence, highest first. Limit-only sectors rank below P.
// Gamma uses 22 > 21 > 12 > 11: with the row-major order the quadratic
// Gamma relations leave unresolved overlaps.
const std::vector<SectorRank> kDefaultOrder = {
    {Sector::Tb, kRowMajor}, {Sector::T, kRowMajor},  {Sector::Gb, kRowMajor},    {Sector::G, kReversed},
    {Sector::P, kRowMajor},  {Sector::W, kRowMajor},  {Sector::Jd, kRowMajor},    {Sector::J, kRowMajor},
    {Sector::JComp, kRowMajor}, {Sector::PComp, kRowMajor}};

std::vector<int> ranks_for(const std::vector<SectorRank> &high_to_low) {
  const auto &alpha = Alphabet::standard();
  std::vector<int> rank(alpha.size(), 0);
  int n = static_cast<int>(high_to_low.size());
  for (const auto &g : alpha.generators()) {
    auto it = std::find_if(high_to_low.begin(), high_to_low.end(),
                           [&](const SectorRank &s) { return s.sector == g.sector; });
    int sector_rank = n - static_cast<int>(it - high_to_low.begin());
    int within;
    if (g.sector == Sector::PComp)
      within = 3 - g.row;
    else if (g.sector == Sector::JComp)
      within = 15 - (4 * g.row + g.col);
    else
      within = it->within[2 * (g.row - 1) + (g.col - 1)];
    rank[g.id] = sector_rank * 16 + within;
  }
  return rank;
}

std::optional<Sector> sector_from_name(const std::string &s) {
  static const std::map<std::string, Sector> names = {{"P", Sector::P},   {"G", Sector::G},   {"Gb", Sector::Gb},
                                                      {"T", Sector::T},   {"Tb", Sector::Tb}, {"W", Sector::W},
                                                      {"J", Sector::J},   {"Jd", Sector::Jd}};
  auto it = names.find(s);
  if (it == names.end())
    return std::nullopt;
  return it->second;
}

// "22>21>12>11" -> ranks of 11, 12, 21, 22.
std::array<int, 4> parse_within(const std::string &spec) {
  static const std::map<std::string, int> slot = {{"11", 0}, {"12", 1}, {"21", 2}, {"22", 3}};
  std::array<int, 4> out{-1, -1, -1, -1};
  std::istringstream in(spec);
  std::string tok;
  int r = 3;
  while (std::getline(in, tok, '>')) {
    auto it = slot.find(tok);
    if (it == slot.end() || out[it->second] >= 0 || r < 0)
      throw std::invalid_argument("bad entry order '" + spec + "'");
    out[it->second] = r--;
  }
  if (r != -1)
    throw std::invalid_argument("entry order '" + spec + "' must list 11, 12, 21, 22");
  return out;
}

} // namespace

MonomialOrder MonomialOrder::standard() { return MonomialOrder(ranks_for(kDefaultOrder)); }

MonomialOrder MonomialOrder::from_precedence(const std::string &perm) {
  std::vector<SectorRank> order;
  std::string token;
  std::string compact;
  for (char c : perm)
    if (!std::isspace(static_cast<unsigned char>(c)))
      compact += c;
  // Split on '>' outside brackets.
  std::vector<std::string> tokens;
  int depth = 0;
  for (char c : compact) {
    if (c == '[')
      ++depth;
    if (c == ']')
      --depth;
    if (c == '>' && depth == 0) {
      tokens.push_back(token);
      token.clear();
    } else {
      token += c;
    }
  }
  tokens.push_back(token);
  for (const auto &tok : tokens) {
    std::string name = tok, within;
    auto br = tok.find('[');
    if (br != std::string::npos) {
      if (tok.back() != ']')
        throw std::invalid_argument("unterminated entry order in '" + tok + "'");
      name = tok.substr(0, br);
      within = tok.substr(br + 1, tok.size() - br - 2);
    }
    auto s = sector_from_name(name);
    if (!s)
      throw std::invalid_argument("unknown sector '" + name + "' in precedence");
    for (const auto &e : order)
      if (e.sector == *s)
        throw std::invalid_argument("sector '" + name + "' repeated in precedence");
    auto def = std::find_if(kDefaultOrder.begin(), kDefaultOrder.end(),
                            [&](const SectorRank &r) { return r.sector == *s; });
    order.push_back({*s, within.empty() ? def->within : parse_within(within)});
  }
  for (const auto &d : kDefaultOrder)
    if (std::none_of(order.begin(), order.end(), [&](const SectorRank &r) { return r.sector == d.sector; }))
      order.push_back(d);
  return MonomialOrder(ranks_for(order));
}

bool MonomialOrder::less(const Word &a, const Word &b) const {
  if (a.size() != b.size())
    return a.size() < b.size();
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != b[k])
      return rank_[a[k]] < rank_[b[k]];
  return false;
}

const NCPoly::Term &MonomialOrder::leading_term(const NCPoly &p) const {
  if (p.is_zero())
    throw std::invalid_argument("leading term of zero polynomial");
  const NCPoly::Term *best = &p.terms().front();
  for (const auto &t : p.terms())
    if (less(best->first, t.first))
      best = &t;
  return *best;
}

std::string MonomialOrder::describe() const {
  const auto &alpha = Alphabet::standard();
  std::vector<GenId> ids;
  for (const auto &g : alpha.generators())
    if (g.sector == Sector::P || g.sector == Sector::G || g.sector == Sector::Gb || g.sector == Sector::T ||
        g.sector == Sector::Tb)
      ids.push_back(g.id);
  std::sort(ids.begin(), ids.end(), [&](GenId a, GenId b) { return rank_[a] > rank_[b]; });
  std::string out = "deglex:";
  for (std::size_t k = 0; k < ids.size(); ++k)
    out += (k ? ">" : "") + alpha[ids[k]].name;
  return out;
}

// ---------------------------------------------------------------------------
// RewriteSystem

RewriteRule orient_relation(const NCPoly &relation, const MonomialOrder &order, const std::string &source) {
  if (relation.is_zero())
    throw OrientationError("cannot orient the zero relation " + source);
  const auto &[lead, coeff] = order.leading_term(relation);
  Scalar inv = coeff.inverse();
  NCPoly rhs = (NCPoly::word(lead, coeff) - relation).scaled(inv);
  return RewriteRule{lead, rhs, source};
}

void RewriteSystem::add_rule(RewriteRule rule) {
  by_lhs_.try_emplace(rule.lhs, static_cast<int>(rules_.size()));
  if (std::find(lengths_.begin(), lengths_.end(), rule.lhs.size()) == lengths_.end()) {
    lengths_.push_back(rule.lhs.size());
    std::sort(lengths_.begin(), lengths_.end());
  }
  rules_.push_back(std::move(rule));
}

int RewriteSystem::match_at(const Word &w, std::size_t pos) const {
  int best = -1;
  for (std::size_t len : lengths_) {
    if (pos + len > w.size())
      break;
    auto it = by_lhs_.find(w.sub(pos, len));
    if (it != by_lhs_.end() && (best < 0 || it->second < best))
      best = it->second;
  }
  return best;
}

std::optional<std::pair<std::size_t, int>> RewriteSystem::find_redex(const Word &w) const {
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    int r = match_at(w, pos);
    if (r >= 0)
      return std::make_pair(pos, r);
  }
  return std::nullopt;
}

nlohmann::json RewriteSystem::to_json() const {
  nlohmann::json rules = nlohmann::json::array();
  for (const auto &r : rules_)
    rules.push_back({{"lhs", r.lhs.str()}, {"rhs", r.rhs.str()}, {"source", r.source}});
  return {{"order", order_.describe()},
          {"caps", {{"maxDegree", caps_.max_degree}, {"maxSteps", caps_.max_steps}}},
          {"rules", rules}};
}

namespace {

bool contains_subword(const Word &big, const Word &small) {
  return big.bytes().find(small.bytes()) != std::string::npos;
}

} // namespace

RewriteSystem orient(const RelationSet &relations, const MonomialOrder &order, const Caps &caps,
                     const Bindings &bindings) {
  struct Pending {
    NCPoly poly;
    std::string source;
  };
  std::deque<Pending> queue;
  for (const auto &r : relations.relations()) {
    NCPoly p = r.poly;
    if (!bindings.empty()) {
      const auto &[lead, coeff] = order.leading_term(p);
      Scalar bound;
      try {
        bound = coeff.substitute(bindings);
      } catch (const EvaluationError &) {
        bound = Scalar();
      }
      if (bound.is_zero())
        throw OrientationError("leading coefficient " + coeff.str() + " of " + r.label + " at " + lead.str() +
                               " vanishes at " + bindings_str(bindings) +
                               "; use exact mode or a different sample");
      p = p.substitute(bindings);
    }
    queue.push_back({std::move(p), r.label});
  }

  struct Active {
    RewriteRule rule;
    NCPoly poly; // monic relation, lhs - rhs
  };
  std::vector<Active> active;
  auto rebuild = [&]() {
    RewriteSystem sys(order, caps);
    for (const auto &a : active)
      sys.add_rule(a.rule);
    return sys;
  };
  RewriteSystem current = rebuild();
  while (!queue.empty()) {
    Pending item = std::move(queue.front());
    queue.pop_front();
    NCPoly p;
    {
      Reducer red(current);
      p = red.normal_form(item.poly);
    }
    if (p.is_zero())
      continue;
    RewriteRule rule = orient_relation(p, order, item.source);
    std::vector<Active> kept;
    for (auto &a : active) {
      if (contains_subword(a.rule.lhs, rule.lhs))
        queue.push_back({a.poly, a.rule.source});
      else
        kept.push_back(std::move(a));
    }
    active = std::move(kept);
    NCPoly monic = NCPoly::word(rule.lhs) - rule.rhs;
    active.push_back({std::move(rule), std::move(monic)});
    current = rebuild();
  }
  // Tail reduction so every right side is in normal form.
  RewriteSystem sys(order, caps);
  {
    Reducer red(current);
    for (auto &a : active) {
      a.rule.rhs = red.normal_form(a.rule.rhs);
      sys.add_rule(a.rule);
    }
  }
  return sys;
}

// ---------------------------------------------------------------------------
// Reducer

Reduction Reducer::reduce(const NCPoly &x) {
  Reduction out;
  std::size_t start = steps_;
  budget_ = steps_ + sys_.caps().max_steps;
  NCPolyBuilder acc;
  for (const auto &[w, c] : x.terms()) {
    if (static_cast<int>(w.size()) > sys_.caps().max_degree) {
      acc.add(w, c);
      out.status = ReductionStatus::degree_cap;
      continue;
    }
    if (out.status == ReductionStatus::step_cap) {
      acc.add(w, c);
      continue;
    }
    try {
      acc.add(nf_word(w), c);
    } catch (const CapExceeded &e) {
      acc.add(w, c);
      out.status = e.status;
    }
  }
  out.value = acc.build();
  out.steps = steps_ - start;
  return out;
}

NCPoly Reducer::normal_form(const NCPoly &x) {
  budget_ = steps_ + sys_.caps().max_steps;
  NCPolyBuilder acc;
  for (const auto &[w, c] : x.terms()) {
    if (static_cast<int>(w.size()) > sys_.caps().max_degree)
      throw CapExceeded(ReductionStatus::degree_cap);
    acc.add(nf_word(w), c);
  }
  return acc.build();
}

const NCPoly &Reducer::nf_word(const Word &w) {
  auto it = memo_.find(w);
  if (it != memo_.end())
    return it->second;
  NCPoly result;
  if (w.empty()) {
    result = NCPoly(1);
  } else {
    const NCPoly &tail = nf_word(w.sub(1));
    NCPolyBuilder acc;
    GenId x = w[0];
    for (const auto &[v, c] : tail.terms())
      acc.add(nf_left(x, v), c);
    result = acc.build();
  }
  return memo_.emplace(w, std::move(result)).first->second;
}

const NCPoly &Reducer::nf_left(GenId x, const Word &v) {
  Word key = Word::single(x) * v;
  auto it = memo_.find(key);
  if (it != memo_.end())
    return it->second;
  int r = sys_.match_at(key, 0);
  NCPoly result;
  if (r < 0) {
    result = NCPoly::word(key);
  } else {
    if (++steps_ > budget_)
      throw CapExceeded(ReductionStatus::step_cap);
    const RewriteRule &rule = sys_.rules()[r];
    Word rest = key.sub(rule.lhs.size());
    NCPolyBuilder acc;
    for (const auto &[m, c] : rule.rhs.terms())
      acc.add(nf_product(m, rest), c);
    result = acc.build();
  }
  return memo_.emplace(std::move(key), std::move(result)).first->second;
}

NCPoly Reducer::nf_product(const Word &m, const Word &v) {
  NCPoly p = NCPoly::word(v);
  for (std::size_t k = m.size(); k-- > 0;) {
    NCPolyBuilder acc;
    for (const auto &[u, c] : p.terms())
      acc.add(nf_left(m[k], u), c);
    p = acc.build();
  }
  return p;
}

Reduction normal_form(const NCPoly &x, const RewriteSystem &sys) {
  Reducer red(sys);
  return red.reduce(x);
}

// ---------------------------------------------------------------------------
// Overlaps

std::vector<Ambiguity> overlap_report(const RewriteSystem &sys, int max_degree) {
  std::vector<Ambiguity> out;
  Reducer red(sys);
  const auto &rules = sys.rules();
  auto resolve = [&](const Word &word, const NCPoly &left, const NCPoly &right, std::size_t i, std::size_t j) {
    Ambiguity amb{word, rules[i].source, rules[j].source, {}, false};
    Reduction a = red.reduce(left), b = red.reduce(right);
    if (!a.complete() || !b.complete()) {
      amb.inconclusive = true;
      amb.difference = a.value - b.value;
      out.push_back(std::move(amb));
      return;
    }
    NCPoly diff = a.value - b.value;
    if (!diff.is_zero()) {
      amb.difference = std::move(diff);
      out.push_back(std::move(amb));
    }
  };
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Word &li = rules[i].lhs;
    for (std::size_t j = 0; j < rules.size(); ++j) {
      const Word &lj = rules[j].lhs;
      // Overlaps: suffix of li equals prefix of lj.
      std::size_t maxk = std::min(li.size(), lj.size());
      for (std::size_t k = 1; k < maxk; ++k) {
        if (li.bytes().compare(li.size() - k, k, lj.bytes(), 0, k) != 0)
          continue;
        Word word = li * lj.sub(k);
        if (static_cast<int>(word.size()) > max_degree)
          continue;
        NCPoly left = rules[i].rhs * NCPoly::word(lj.sub(k));
        NCPoly right = NCPoly::word(li.sub(0, li.size() - k)) * rules[j].rhs;
        resolve(word, left, right, i, j);
      }
      // Inclusions.
      if (i != j && lj.size() < li.size()) {
        std::size_t pos = li.bytes().find(lj.bytes());
        if (pos != std::string::npos && static_cast<int>(li.size()) <= max_degree) {
          NCPoly right = NCPoly::word(li.sub(0, pos)) * rules[j].rhs * NCPoly::word(li.sub(pos + lj.size()));
          resolve(li, rules[i].rhs, right, i, j);
        }
      }
    }
  }
  return out;
}

nlohmann::json ambiguities_to_json(const std::vector<Ambiguity> &amb) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto &a : amb)
    out.push_back({{"word", a.word.str()},
                   {"ruleA", a.rule_a},
                   {"ruleB", a.rule_b},
                   {"difference", a.difference.str()},
                   {"inconclusive", a.inconclusive}});
  return out;
}

RewriteSystem promote_overlaps(const RelationSet &relations, const MonomialOrder &order, const Caps &caps,
                               int max_degree, int rounds, RelationSet *promoted) {
  RelationSet rels = relations;
  RewriteSystem sys = orient(rels, order, caps);
  for (int round = 0; round < rounds; ++round) {
    auto amb = overlap_report(sys, max_degree);
    bool added = false;
    for (const auto &a : amb) {
      if (a.inconclusive || a.difference.is_zero())
        continue;
      std::string label = "overlap(" + a.word.str() + ")";
      if (rels.add(label, a.difference)) {
        added = true;
        if (promoted)
          promoted->add(label, a.difference);
      }
    }
    if (!added)
      break;
    sys = orient(rels, order, caps);
  }
  return sys;
}

// ---------------------------------------------------------------------------
// Ideal membership

namespace {

struct OrderCmp {
  const MonomialOrder *order;
  bool operator()(const Word &a, const Word &b) const { return order->less(a, b); }
};

using Row = std::map<Word, Scalar, OrderCmp>;
using Combo = std::unordered_map<std::size_t, Scalar>;

void axpy(Row &row, const Row &pivot, const Scalar &f) {
  for (const auto &[w, c] : pivot) {
    auto [it, inserted] = row.try_emplace(w, c * f);
    if (!inserted) {
      it->second += c * f;
      if (it->second.is_zero())
        row.erase(it);
    }
  }
}

void axpy(Combo &combo, const Combo &pivot, const Scalar &f) {
  for (const auto &[k, c] : pivot) {
    auto [it, inserted] = combo.try_emplace(k, c * f);
    if (!inserted) {
      it->second += c * f;
      if (it->second.is_zero())
        combo.erase(it);
    }
  }
}

void words_up_to(const std::vector<GenId> &alphabet, int max_len, std::vector<Word> &out) {
  out.clear();
  out.push_back(Word());
  std::size_t begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k)
      for (GenId g : alphabet)
        out.push_back(out[k] * Word::single(g));
    begin = end;
  }
}

} // namespace

struct MembershipOracle::Impl {
  struct Product {
    Word left;
    std::size_t relation;
    Word right;
  };
  struct Pivot {
    Row row;
    Combo combo;
  };

  Impl(const MonomialOrder &o, int d) : order(o), degree(d), cmp{&order} {}

  void reduce(Row &row, Combo &combo) const {
    while (!row.empty()) {
      auto lead = std::prev(row.end());
      auto it = pivots.find(lead->first);
      if (it == pivots.end())
        return;
      Scalar f = -lead->second;
      axpy(row, it->second.row, f);
      axpy(combo, it->second.combo, f);
    }
  }

  MonomialOrder order;
  int degree;
  OrderCmp cmp;
  bool overflow = false;
  std::vector<Product> products;
  std::unordered_map<Word, Pivot, WordHash> pivots;
};

MembershipOracle::MembershipOracle(const RelationSet &relations, int degree, const MonomialOrder &order,
                                   const MembershipOptions &options)
    : impl_(std::make_unique<Impl>(order, degree)) {
  std::vector<GenId> alphabet = options.alphabet;
  if (alphabet.empty()) {
    std::set<GenId> all;
    for (const auto &r : relations.relations())
      for (GenId g : r.poly.support())
        all.insert(g);
    alphabet.assign(all.begin(), all.end());
  }
  std::set<GenId> alpha_set(alphabet.begin(), alphabet.end());

  auto &products = impl_->products;
  std::vector<Word> words;
  const auto &rels = relations.relations();
  for (std::size_t k = 0; k < rels.size(); ++k) {
    bool inside = true;
    for (GenId g : rels[k].poly.support())
      inside = inside && alpha_set.count(g) > 0;
    int room = degree - rels[k].poly.degree();
    if (!inside || room < 0)
      continue;
    words_up_to(alphabet, room, words);
    for (const auto &u : words)
      for (const auto &v : words)
        if (static_cast<int>(u.size() + v.size()) <= room)
          products.push_back({u, k, v});
    if (products.size() > options.max_rows) {
      impl_->overflow = true;
      return;
    }
  }

  for (std::size_t idx = 0; idx < products.size(); ++idx) {
    const auto &pr = products[idx];
    Row row(impl_->cmp);
    for (const auto &[w, c] : rels[pr.relation].poly.terms())
      row.emplace(pr.left * w * pr.right, c);
    Combo combo{{idx, Scalar(1)}};
    impl_->reduce(row, combo);
    if (row.empty())
      continue;
    auto lead = std::prev(row.end());
    Scalar inv = lead->second.inverse();
    for (auto &[w, c] : row)
      c *= inv;
    for (auto &[k, c] : combo)
      c *= inv;
    Word lw = lead->first;
    impl_->pivots.emplace(std::move(lw), Impl::Pivot{std::move(row), std::move(combo)});
  }
}

MembershipOracle::~MembershipOracle() = default;
MembershipOracle::MembershipOracle(MembershipOracle &&) noexcept = default;

std::size_t MembershipOracle::rows() const { return impl_->products.size(); }

MembershipVerdict MembershipOracle::test(const NCPoly &x) const {
  MembershipVerdict verdict;
  verdict.degree_used = impl_->degree;
  verdict.rows = impl_->products.size();
  if (x.degree() > impl_->degree)
    throw std::invalid_argument("membership degree below the degree of the input");
  if (impl_->overflow)
    return verdict;
  if (x.is_zero()) {
    verdict.status = MembershipStatus::member;
    return verdict;
  }
  Row target(impl_->cmp);
  for (const auto &[w, c] : x.terms())
    target.emplace(w, c);
  Combo combo;
  impl_->reduce(target, combo);
  if (!target.empty()) {
    verdict.status = MembershipStatus::not_member_at_degree;
    return verdict;
  }
  verdict.status = MembershipStatus::member;
  // x - sum(...) = 0 after reduction with negative multipliers, so x = -combo.
  std::vector<std::pair<std::size_t, Scalar>> sorted(combo.begin(), combo.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
  const auto &products = impl_->products;
  for (const auto &[k, c] : sorted)
    verdict.certificate.push_back({products[k].left, products[k].relation, products[k].right, -c});
  return verdict;
}

MembershipVerdict ideal_membership(const NCPoly &x, const RelationSet &relations, int degree,
                                   const MonomialOrder &order, const MembershipOptions &options) {
  MembershipOptions opt = options;
  if (opt.alphabet.empty()) {
    std::set<GenId> all;
    for (GenId g : x.support())
      all.insert(g);
    for (const auto &r : relations.relations())
      for (GenId g : r.poly.support())
        all.insert(g);
    opt.alphabet.assign(all.begin(), all.end());
  }
  return MembershipOracle(relations, degree, order, opt).test(x);
}

NCPoly expand_certificate(const std::vector<CertificateTerm> &cert, const RelationSet &relations) {
  NCPolyBuilder acc;
  for (const auto &t : cert)
    acc.add_sandwich(t.left, relations.relations().at(t.relation).poly, t.right, t.coefficient);
  return acc.build();
}

nlohmann::json certificate_to_json(const MembershipVerdict &v, const RelationSet &relations) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto &t : v.certificate)
    terms.push_back({{"left", t.left.str()},
                     {"relation", relations.relations().at(t.relation).label},
                     {"right", t.right.str()},
                     {"coefficient", t.coefficient.str()}});
  const char *status = v.status == MembershipStatus::member                 ? "member"
                       : v.status == MembershipStatus::not_member_at_degree ? "notMemberAtDegree"
                                                                            : "inconclusive";
  return {{"status", status}, {"degree", v.degree_used}, {"rows", v.rows}, {"terms", terms}};
}

// ---------------------------------------------------------------------------
// Linear algebra

std::vector<std::vector<Scalar>> null_space(const std::vector<std::vector<std::pair<std::size_t, Scalar>>> &rows,
                                            std::size_t columns) {
  // Rows in reduced echelon form keyed by pivot column.
  std::map<std::size_t, std::map<std::size_t, Scalar>> pivots;
  for (const auto &input : rows) {
    std::map<std::size_t, Scalar> row;
    for (const auto &[c, v] : input)
      if (!v.is_zero())
        row[c] += v;
    for (auto it = row.begin(); it != row.end();)
      it = it->second.is_zero() ? row.erase(it) : std::next(it);
    // Eliminate existing pivot columns.
    for (auto it = row.begin(); it != row.end();) {
      auto p = pivots.find(it->first);
      if (p == pivots.end()) {
        ++it;
        continue;
      }
      Scalar f = it->second;
      std::size_t col = it->first;
      for (const auto &[c, v] : p->second) {
        row[c] -= f * v;
      }
      for (auto jt = row.begin(); jt != row.end();)
        jt = jt->second.is_zero() ? row.erase(jt) : std::next(jt);
      it = row.upper_bound(col);
    }
    if (row.empty())
      continue;
    std::size_t col = row.begin()->first;
    Scalar inv = row.begin()->second.inverse();
    for (auto &[c, v] : row)
      v *= inv;
    // Keep full reduction: remove the new pivot column from older rows.
    for (auto &[pc, prow] : pivots) {
      auto it = prow.find(col);
      if (it == prow.end())
        continue;
      Scalar f = it->second;
      for (const auto &[c, v] : row)
        prow[c] -= f * v;
      for (auto jt = prow.begin(); jt != prow.end();)
        jt = jt->second.is_zero() ? prow.erase(jt) : std::next(jt);
    }
    pivots.emplace(col, std::move(row));
  }
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (pivots.count(free))
      continue;
    std::vector<Scalar> v(columns);
    v[free] = 1;
    for (const auto &[pc, prow] : pivots) {
      auto it = prow.find(free);
      if (it != prow.end())
        v[pc] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

AnsatzSolution linear_ansatz_solve(const std::vector<std::vector<NCPoly>> &contributions, Reducer &reducer) {
  AnsatzSolution sol;
  sol.unknowns = contributions.size();
  std::map<std::pair<std::size_t, Word>, std::vector<std::pair<std::size_t, Scalar>>> eqs;
  for (std::size_t k = 0; k < contributions.size(); ++k)
    for (std::size_t e = 0; e < contributions[k].size(); ++e) {
      NCPoly nf = reducer.normal_form(contributions[k][e]);
      for (const auto &[w, c] : nf.terms())
        eqs[{e, w}].emplace_back(k, c);
    }
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> rows;
  rows.reserve(eqs.size());
  for (auto &[key, row] : eqs)
    rows.push_back(std::move(row));
  sol.basis = null_space(rows, sol.unknowns);
  return sol;
}

} // namespace qpoincare
