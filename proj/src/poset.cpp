#include "meetpd/poset.hpp"

#include <queue>

#include "meetpd/errors.hpp"

namespace meetpd {

std::vector<std::size_t> stable_linear_extension(
    std::size_t count, const std::function<bool(std::size_t, std::size_t)>& leq) {
  std::vector<std::size_t> indegree(count, 0);
  std::vector<std::vector<std::size_t>> successors(count);
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = 0; b < count; ++b)
      if (a != b && leq(a, b)) {
        successors[a].push_back(b);
        ++indegree[b];
      }

  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < count; ++i)
    if (indegree[i] == 0) ready.push(i);

  std::vector<std::size_t> order;
  order.reserve(count);
  while (!ready.empty()) {
    const std::size_t next = ready.top();
    ready.pop();
    order.push_back(next);
    for (std::size_t s : successors[next])
      if (--indegree[s] == 0) ready.push(s);
  }
  if (order.size() != count) throw CycleError("order relation contains a cycle");
  return order;
}

Poset::Poset(std::vector<std::string> labels, std::vector<Bitset> up)
    : labels_(std::move(labels)), up_(std::move(up)) {
  const std::size_t n = labels_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_.emplace(labels_[i], i).second)
      throw DuplicateElement("duplicate element '" + labels_[i] + "'");
  }

  down_.assign(n, Bitset(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = up_[x].find_first(); y != Bitset::npos; y = up_[x].find_next(y))
      down_[y].set(x);

  for (std::size_t x = 0; x < n; ++x) {
    if (!up_[x].test(x)) throw Error("order relation is not reflexive at '" + labels_[x] + "'");
    for (std::size_t y = up_[x].find_first(); y != Bitset::npos; y = up_[x].find_next(y)) {
      if (y != x && up_[y].test(x))
        throw CycleError("antisymmetry violated between '" + labels_[x] + "' and '" + labels_[y] + "'");
      if (!up_[y].is_subset_of(up_[x]))
        throw Error("order relation is not transitive through '" + labels_[y] + "'");
    }
  }

  topo_ = stable_linear_extension(n, [this](std::size_t a, std::size_t b) { return up_[a].test(b); });

  for (std::size_t x = 0; x < n; ++x)
    if (up_[x].all()) {
      least_ = x;
      break;
    }
}

Poset Poset::from_covers(std::vector<std::string> labels,
                         const std::vector<std::pair<std::string, std::string>>& cover_edges) {
  if (labels.empty()) throw Error("a poset needs at least one element");
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (!index.emplace(labels[i], i).second) throw DuplicateElement("duplicate element '" + labels[i] + "'");

  const std::size_t n = labels.size();
  std::vector<std::vector<std::size_t>> adjacency(n);
  for (const auto& [lower, upper] : cover_edges) {
    const auto lo = index.find(lower);
    const auto hi = index.find(upper);
    if (lo == index.end()) throw UnknownElement("edge references unknown element '" + lower + "'");
    if (hi == index.end()) throw UnknownElement("edge references unknown element '" + upper + "'");
    if (lo->second == hi->second) throw CycleError("self-loop on '" + lower + "'");
    adjacency[lo->second].push_back(hi->second);
  }

  std::vector<Bitset> up(n, Bitset(n));
  for (std::size_t start = 0; start < n; ++start) {
    std::vector<std::size_t> stack{start};
    up[start].set(start);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w : adjacency[v]) {
        if (w == start) throw CycleError("cycle through '" + labels[start] + "'");
        if (!up[start].test(w)) {
          up[start].set(w);
          stack.push_back(w);
        }
      }
    }
  }
  return Poset(std::move(labels), std::move(up));
}

Poset Poset::from_relation(std::vector<std::string> labels,
                           const std::function<bool(std::size_t, std::size_t)>& leq) {
  if (labels.empty()) throw Error("a poset needs at least one element");
  const std::size_t n = labels.size();
  std::vector<Bitset> up(n, Bitset(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (leq(x, y)) up[x].set(y);
  return Poset(std::move(labels), std::move(up));
}

std::optional<std::size_t> Poset::index_of(const std::string& label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> Poset::interval(std::size_t x, std::size_t y) const {
  std::vector<std::size_t> out;
  if (!leq(x, y)) return out;
  const Bitset between = up_[x] & down_[y];
  for (std::size_t z : topo_)
    if (between.test(z)) out.push_back(z);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> Poset::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < size(); ++x)
    for (std::size_t y = up_[x].find_first(); y != Bitset::npos; y = up_[x].find_next(y))
      if (x != y && (up_[x] & down_[y]).count() == 2) out.emplace_back(x, y);
  return out;
}

MeetSemilattice::MeetSemilattice(Poset poset) : poset_(std::move(poset)) {
  const std::size_t n = poset_.size();
  const auto& order = poset_.linear_order();
  meet_.assign(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      const Bitset common = poset_.downset(x) & poset_.downset(y);
      // The maximum of `common`, if any, is its last member in linear order.
      std::optional<std::size_t> top;
      for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (common.test(*it)) {
          top = *it;
          break;
        }
      if (!top || !common.is_subset_of(poset_.downset(*top)))
        throw NotASemilattice("elements '" + poset_.label(x) + "' and '" + poset_.label(y) +
                              "' have no greatest lower bound");
      meet_[x * n + y] = *top;
      meet_[y * n + x] = *top;
    }
  }
}

Poset product_poset(const Poset& p, const Poset& q) {
  const std::size_t np = p.size();
  const std::size_t nq = q.size();
  std::vector<std::string> labels;
  labels.reserve(np * nq);
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < nq; ++j) labels.push_back("(" + p.label(i) + "," + q.label(j) + ")");
  return Poset::from_relation(std::move(labels), [&](std::size_t a, std::size_t b) {
    return p.leq(a / nq, b / nq) && q.leq(a % nq, b % nq);
  });
}

MeetSemilattice product_semilattice(const std::vector<std::shared_ptr<const MeetSemilattice>>& factors) {
  if (factors.empty()) throw Error("product of zero semilattices");
  if (factors.size() == 1) return *factors.front();

  std::size_t total = 1;
  for (const auto& f : factors) total *= f->size();

  auto digits = [&](std::size_t flat) {
    std::vector<std::size_t> out(factors.size());
    for (std::size_t k = factors.size(); k-- > 0;) {
      out[k] = flat % factors[k]->size();
      flat /= factors[k]->size();
    }
    return out;
  };

  std::vector<std::vector<std::size_t>> tuples(total);
  std::vector<std::string> labels(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    tuples[flat] = digits(flat);
    std::string label = "(";
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (k) label += ",";
      label += factors[k]->poset().label(tuples[flat][k]);
    }
    labels[flat] = label + ")";
  }

  Poset poset = Poset::from_relation(std::move(labels), [&](std::size_t a, std::size_t b) {
    for (std::size_t k = 0; k < factors.size(); ++k)
      if (!factors[k]->poset().leq(tuples[a][k], tuples[b][k])) return false;
    return true;
  });
  return MeetSemilattice(std::move(poset));
}

}  // namespace meetpd
