#include "hamvt/hamsearch.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hamvt {

namespace {

class Searcher {
 public:
  Searcher(const Graph& g, std::uint64_t budget) : g_(g), budget_(budget) {
    auto n = g.n();
    visited_.assign(n, 0);
    deg_un_.resize(n);
    for (std::uint32_t v = 0; v < n; ++v) deg_un_[v] = g.degree(v);
  }

  // Runs the search below the given forced prefix (which must start at 0).
  SearchStatus run(const std::vector<std::uint32_t>& prefix) {
    for (auto v : prefix) {
      if (!push(v)) return SearchStatus::Exhausted;
    }
    if (path_.size() == g_.n()) return g_.adjacent(path_.back(), path_.front()) ? SearchStatus::Found : SearchStatus::Exhausted;

    struct Frame {
      std::vector<std::uint32_t> cand;
      std::size_t next = 0;
    };
    std::vector<Frame> stack;
    stack.push_back({candidates(), 0});
    const auto base_depth = path_.size();
    while (!stack.empty()) {
      auto& fr = stack.back();
      if (fr.next == fr.cand.size()) {
        stack.pop_back();
        if (path_.size() > base_depth) pop();
        continue;
      }
      auto w = fr.cand[fr.next++];
      if (++expansions_ > budget_) return SearchStatus::Timeout;
      if (!push(w)) {
        pop();
        continue;
      }
      if (path_.size() == g_.n()) {
        if (g_.adjacent(w, path_.front())) return SearchStatus::Found;
        pop();
        continue;
      }
      stack.push_back({candidates(), 0});
    }
    return SearchStatus::Exhausted;
  }

  const std::vector<std::uint32_t>& path() const { return path_; }
  std::uint64_t expansions() const { return expansions_; }

 private:
  std::uint32_t avail(std::uint32_t w) const {
    auto a = deg_un_[w];
    auto s = path_.front(), e = path_.back();
    if (g_.adjacent(w, s)) ++a;
    if (e != s && g_.adjacent(w, e)) ++a;
    return a;
  }

  // Adds v as the new end; false if the partial path is already hopeless.
  // The vertex is added even on failure so the caller can pop it.
  bool push(std::uint32_t v) {
    if (visited_[v]) throw std::invalid_argument("find_hcycle: hint revisits a vertex");
    if (!path_.empty() && !g_.adjacent(path_.back(), v)) throw std::invalid_argument("find_hcycle: hint is not a path");
    auto prev = path_.empty() ? v : path_.back();
    visited_[v] = 1;
    path_.push_back(v);
    for (auto w : g_.neighbors(v)) --deg_un_[w];
    auto n = g_.n();
    if (path_.size() == n) return true;
    auto s = path_.front();
    if (deg_un_[v] == 0 || deg_un_[s] == 0) return false;
    if (path_.size() >= 2 && prev != s) {
      for (auto w : g_.neighbors(prev))
        if (!visited_[w] && avail(w) < 2) return false;
    }
    return true;
  }

  void pop() {
    auto v = path_.back();
    path_.pop_back();
    visited_[v] = 0;
    for (auto w : g_.neighbors(v)) ++deg_un_[w];
  }

  std::vector<std::uint32_t> candidates() const {
    auto v = path_.back();
    std::vector<std::uint32_t> out;
    std::uint32_t forced = 0;
    std::size_t nforced = 0;
    for (auto w : g_.neighbors(v)) {
      if (visited_[w]) continue;
      out.push_back(w);
      if (path_.size() >= 2 && avail(w) <= 2) {
        forced = w;
        ++nforced;
      }
    }
    if (nforced >= 2) return {};
    if (nforced == 1) return {forced};
    std::stable_sort(out.begin(), out.end(), [&](auto a, auto b) {
      return deg_un_[a] != deg_un_[b] ? deg_un_[a] < deg_un_[b] : a < b;
    });
    return out;
  }

  const Graph& g_;
  std::uint64_t budget_;
  std::uint64_t expansions_ = 0;
  std::vector<char> visited_;
  std::vector<std::uint32_t> deg_un_;
  std::vector<std::uint32_t> path_;
};

HamiltonCertificate make_cert(const Graph& g, std::vector<std::uint32_t> cycle) {
  HamiltonCertificate c;
  c.graph_hash = g.content_hash();
  c.cycle = std::move(cycle);
  return c;
}

}  // namespace

SearchResult find_hcycle(const Graph& g, const SearchOptions& opts) {
  SearchResult res;
  auto n = g.n();
  if (n < 3) return res;
  std::vector<std::uint32_t> prefix = opts.hint;
  if (prefix.empty()) prefix.push_back(0);
  if (prefix.front() != 0) throw std::invalid_argument("find_hcycle: hint must start at vertex 0");

  // A hint longer than the root fixes the branch; run it directly.
  if (prefix.size() > 1) {
    Searcher s(g, opts.budget);
    res.status = s.run(prefix);
    res.expansions = s.expansions();
    if (res.status == SearchStatus::Found) res.certificate = make_cert(g, s.path());
  } else {
    // Root candidates: neighbours of 0 ordered by degree (all unvisited).
    auto branches = g.neighbors(0);
    std::stable_sort(branches.begin(), branches.end(), [&](auto a, auto b) {
      auto da = g.degree(a) - 1, db = g.degree(b) - 1;  // 0 is visited and adjacent to both
      return da != db ? da < db : a < b;
    });
    std::vector<SearchStatus> status(branches.size(), SearchStatus::Exhausted);
    std::vector<std::vector<std::uint32_t>> paths(branches.size());
    std::vector<std::uint64_t> spent(branches.size(), 0);
    std::atomic<std::size_t> best{branches.size()};
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        auto k = next.fetch_add(1);
        if (k >= branches.size() || k > best.load()) return;
        Searcher s(g, opts.budget);
        status[k] = s.run({0, branches[k]});
        spent[k] = s.expansions();
        if (status[k] == SearchStatus::Found) {
          paths[k] = s.path();
          auto cur = best.load();
          while (k < cur && !best.compare_exchange_weak(cur, k)) {
          }
        }
      }
    };
    unsigned jobs = std::max(1u, opts.jobs);
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    auto b = best.load();
    // Only branches up to the winner count; later ones may or may not have run.
    auto last = b < branches.size() ? b + 1 : branches.size();
    for (std::size_t k = 0; k < last; ++k) res.expansions += spent[k];
    if (b < branches.size()) {
      res.status = SearchStatus::Found;
      res.certificate = make_cert(g, paths[b]);
    } else {
      res.status = SearchStatus::Exhausted;
      for (auto st : status)
        if (st == SearchStatus::Timeout) res.status = SearchStatus::Timeout;
    }
  }
  if (res.certificate) {
    auto v = verify_certificate(g, *res.certificate);
    if (!v.ok) throw std::logic_error("find_hcycle produced an invalid certificate: " + v.detail);
  }
  return res;
}

Verification verify_certificate(const Graph& g, const HamiltonCertificate& cert) {
  Verification v;
  if (cert.graph_hash != g.content_hash()) {
    v.reason = VerifyReason::Hash;
    v.detail = "hash " + hash_hex(cert.graph_hash) + " != graph " + hash_hex(g.content_hash());
    return v;
  }
  auto n = g.n();
  if (cert.cycle.size() != n) {
    v.reason = VerifyReason::Permutation;
    v.detail = "cycle has " + std::to_string(cert.cycle.size()) + " entries, graph has " + std::to_string(n);
    return v;
  }
  std::vector<char> seen(n, 0);
  for (auto x : cert.cycle) {
    if (x >= n || seen[x]) {
      v.reason = VerifyReason::Permutation;
      v.detail = "vertex " + std::to_string(x) + (x >= n ? " out of range" : " repeated");
      return v;
    }
    seen[x] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    auto a = cert.cycle[k], b = cert.cycle[(k + 1) % n];
    if (!g.adjacent(a, b)) {
      v.reason = VerifyReason::Adjacency;
      v.detail = "no edge " + std::to_string(a) + "-" + std::to_string(b);
      return v;
    }
  }
  v.ok = true;
  return v;
}

const char* reason_name(VerifyReason r) {
  switch (r) {
    case VerifyReason::Ok: return "ok";
    case VerifyReason::Hash: return "hash";
    case VerifyReason::Permutation: return "permutation";
    default: return "adjacency";
  }
}

HamiltonVerdict prove_nonhamiltonian(const Graph& g, std::uint32_t cap) {
  if (g.n() > cap) throw std::length_error("prove_nonhamiltonian: graph exceeds the vertex cap");
  SearchOptions opts;
  opts.budget = std::numeric_limits<std::uint64_t>::max();
  auto r = find_hcycle(g, opts);
  HamiltonVerdict v;
  v.expansions = r.expansions;
  if (r.status == SearchStatus::Found) {
    v.verdict = Verdict::Hamiltonian;
    v.witness = r.certificate;
  }
  return v;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_certificate(std::ostream& os, const HamiltonCertificate& cert) {
  os << "hash " << hash_hex(cert.graph_hash) << '\n';
  for (std::size_t k = 0; k < cert.cycle.size(); ++k) os << (k ? " " : "") << cert.cycle[k];
  os << '\n';
}

HamiltonCertificate read_certificate(std::istream& is) {
  std::string kw, hex;
  if (!(is >> kw >> hex) || kw != "hash" || hex.size() != 16) throw std::runtime_error("certificate: bad hash line");
  HamiltonCertificate c;
  c.graph_hash = std::stoull(hex, nullptr, 16);
  std::uint64_t x;
  while (is >> x) {
    if (x > std::numeric_limits<std::uint32_t>::max()) throw std::runtime_error("certificate: index too large");
    c.cycle.push_back(static_cast<std::uint32_t>(x));
  }
  if (!is.eof()) throw std::runtime_error("certificate: malformed vertex list");
  return c;
}

void save_certificate(const std::string& path, const HamiltonCertificate& cert) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_certificate(out, cert);
}

HamiltonCertificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_certificate(in);
}

}  // namespace hamvt
