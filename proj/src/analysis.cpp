#include "geolrc/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace geolrc {

Matrix parity_check(const Field& f, const Matrix& basis) {
  const std::size_t n = basis.cols, k = basis.rows;
  std::vector<std::size_t> piv;
  std::vector<bool> is_piv(n, false);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (basis.at(i, j) != 0) {
        piv.push_back(j);
        is_piv[j] = true;
        break;
      }
  if (piv.size() != k) throw Error("basis is not in reduced echelon form");
  Matrix H(n - k, n);
  std::size_t row = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_piv[j]) continue;
    H.at(row, j) = 1;
    for (std::size_t i = 0; i < k; ++i) H.at(row, piv[i]) = f.neg(basis.at(i, j));
    ++row;
  }
  return H;
}

Matrix parity_check(const LinearCode& code) { return parity_check(*code.field, code.basis); }

unsigned worker_count() {
  if (const char* env = std::getenv("LRC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned h = std::thread::hardware_concurrency();
  return h ? h : 1;
}

namespace {

template <class Task>
void run_parallel(std::size_t tasks, const Task& task) {
  const unsigned workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(tasks, 1));
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (std::size_t i = next++; i < tasks; i = next++) task(i);
  };
  if (workers <= 1) {
    body();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& th : pool) th.join();
}

}  // namespace

// Messages are enumerated projectively: the first nonzero coordinate is 1.
// For leading position l the free digits follow a modular q-ary Gray code,
// so each step adds one precomputed multiple of one row.
ExhaustiveResult min_distance_exhaustive(const Field& f, const Matrix& basis, std::uint64_t budget) {
  const std::size_t k = basis.rows, n = basis.cols;
  const std::uint64_t q = f.order();
  if (k == 0) throw Error("code has no nonzero codewords");
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > budget / q) throw Error("q^k exceeds the exhaustive budget");
    total *= q;
  }
  // step[i][a]: (succ(a) - a) * row_i with succ(a) = a+1 mod q in code order.
  std::vector<std::vector<Elem>> step(k * q, std::vector<Elem>(n));
  for (std::size_t i = 0; i < k; ++i)
    for (std::uint64_t a = 0; a < q; ++a) {
      const Elem d = f.sub(static_cast<Elem>((a + 1) % q), static_cast<Elem>(a));
      for (std::size_t j = 0; j < n; ++j) step[i * q + a][j] = f.mul(d, basis.at(i, j));
    }

  struct Chunk {
    std::size_t lead;
    std::uint64_t begin, end;
  };
  std::vector<Chunk> chunks;
  const std::uint64_t piece = std::uint64_t{1} << 16;
  for (std::size_t l = 0; l < k; ++l) {
    std::uint64_t count = 1;
    for (std::size_t i = l + 1; i < k; ++i) count *= q;
    for (std::uint64_t b = 0; b < count; b += piece) chunks.push_back({l, b, std::min(count, b + piece)});
  }

  std::atomic<long> best{static_cast<long>(n) + 1};
  std::atomic<std::uint64_t> visited{0};
  run_parallel(chunks.size(), [&](std::size_t ci) {
    if (best.load() <= 1) return;
    const Chunk& c = chunks[ci];
    const std::size_t L = k - 1 - c.lead;
    std::vector<std::uint64_t> digits(L + 1, 0), gray(L, 0);
    std::uint64_t N = c.begin;
    for (std::size_t i = 0; i < L; ++i) {
      digits[i] = N % q;
      N /= q;
    }
    std::vector<Elem> cw(basis.row(c.lead), basis.row(c.lead) + n);
    for (std::size_t i = 0; i < L; ++i) {
      gray[i] = (digits[i] + q - digits[i + 1]) % q;
      if (gray[i] == 0) continue;
      const Elem* row = basis.row(c.lead + 1 + i);
      for (std::size_t j = 0; j < n; ++j) cw[j] = f.add(cw[j], f.mul(static_cast<Elem>(gray[i]), row[j]));
    }
    long w = 0;
    for (Elem x : cw) w += x != 0;
    long local = w;
    for (std::uint64_t m = c.begin + 1; m < c.end; ++m) {
      std::size_t p = 0;
      for (std::uint64_t t = m; t % q == 0; t /= q) ++p;
      const std::uint64_t a = gray[p];
      gray[p] = (a + 1) % q;
      const std::vector<Elem>& d = step[(c.lead + 1 + p) * q + a];
      for (std::size_t j = 0; j < n; ++j) {
        if (d[j] == 0) continue;
        const Elem old = cw[j];
        const Elem nw = f.add(old, d[j]);
        w += (nw != 0) - (old != 0);
        cw[j] = nw;
      }
      local = std::min(local, w);
    }
    visited += c.end - c.begin;
    long cur = best.load();
    while (local < cur && !best.compare_exchange_weak(cur, local)) {
    }
  });
  return {best.load(), visited.load()};
}

LowWeightResult min_distance_low_weight(const Field& f, const Matrix& H, int w_max) {
  if (w_max < 1) throw Error("w_max must be at least 1");
  const std::size_t n = H.cols, m = H.rows;
  if (m == 0) return {true, 1};
  std::vector<std::vector<Elem>> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = H.column(j);

  struct Echelon {
    std::vector<std::vector<Elem>> vecs;
    std::vector<std::size_t> piv;
  };
  auto reduce = [&](const Echelon& e, std::vector<Elem> v) {
    for (std::size_t i = 0; i < e.vecs.size(); ++i) {
      const Elem c = v[e.piv[i]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < m; ++j) v[j] = f.sub(v[j], f.mul(c, e.vecs[i][j]));
    }
    return v;
  };
  auto lead = [&](const std::vector<Elem>& v) -> std::optional<std::size_t> {
    for (std::size_t j = 0; j < m; ++j)
      if (v[j] != 0) return j;
    return std::nullopt;
  };

  for (int w = 1; w <= w_max; ++w) {
    std::atomic<bool> found{false};
    run_parallel(n, [&](std::size_t first) {
      if (found) return;
      Echelon e;
      // Depth-first over increasing column indices; the last column is tested
      // for membership in the span of the earlier ones.
      auto dfs = [&](auto& self, std::size_t start, int depth) -> void {
        if (found) return;
        if (depth == w - 1) {
          for (std::size_t c = start; c < n && !found; ++c)
            if (!lead(reduce(e, cols[c]))) found = true;
          return;
        }
        for (std::size_t c = start; c < n && !found; ++c) {
          auto v = reduce(e, cols[c]);
          auto p = lead(v);
          if (!p) continue;
          const Elem s = f.inv(v[*p]);
          for (auto& x : v) x = f.mul(x, s);
          e.vecs.push_back(std::move(v));
          e.piv.push_back(*p);
          self(self, c + 1, depth + 1);
          e.vecs.pop_back();
          e.piv.pop_back();
        }
      };
      if (w == 1) {
        if (first == 0) dfs(dfs, 0, 0);
        return;
      }
      auto v = cols[first];
      auto p = lead(v);
      if (!p) return;  // zero columns are found at w = 1
      const Elem s = f.inv(v[*p]);
      for (auto& x : v) x = f.mul(x, s);
      e.vecs.push_back(std::move(v));
      e.piv.push_back(*p);
      dfs(dfs, first + 1, 1);
    });
    if (found) return {true, w};
  }
  return {false, w_max + 1};
}

long singleton_bound(long n, long k, long r) {
  if (r < 1) throw Error("locality must be positive");
  return n - k - (k + r - 1) / r + 2;
}

long singleton_gap(long n, long k, long d, long r) { return singleton_bound(n, k, r) - d; }

LocalityVerdict verify_locality(const LinearCode& code, std::uint64_t sweep_budget, std::size_t samples) {
  const Field& f = *code.field;
  LocalityVerdict v;
  for (std::size_t pi = 0; pi < code.partitions.size(); ++pi) {
    const auto& p = code.partitions[pi];
    for (const auto& hs : p.sets) {
      ++v.sets_checked;
      bool ok = true;
      if (hs.e.rows == hs.columns.size()) ok = check_recovery_matrix(f, hs.e).pass;
      for (auto c : hs.columns) ok = ok && p.repair[c].ok;
      if (!ok) {
        v.pass = false;
        v.failing.push_back((code.partitions.size() > 1 ? "partition " + std::to_string(pi + 1) + " " : "") +
                            hs.label);
      }
    }
  }
  auto check_word = [&](const std::vector<Elem>& word) {
    ++v.words_checked;
    for (const auto& p : code.partitions)
      for (std::size_t c = 0; c < code.n; ++c) {
        const auto& rep = p.repair[c];
        if (!rep.ok) continue;
        Elem s = 0;
        for (std::size_t i = 0; i < rep.helpers.size(); ++i) s = f.add(s, f.mul(rep.coeffs[i], word[rep.helpers[i]]));
        if (s != word[c]) {
          v.pass = false;
          if (v.failing.size() < 20) v.failing.push_back("repair mismatch at column " + std::to_string(c));
        }
      }
  };
  const std::uint64_t q = f.order();
  std::uint64_t total = 1;
  bool small = true;
  for (std::size_t i = 0; i < code.k && small; ++i) {
    if (total > sweep_budget / q) small = false;
    else total *= q;
  }
  if (small) {
    std::vector<Elem> msg(code.k, 0);
    for (std::uint64_t it = 0; it < total; ++it) {
      check_word(encode(code, msg));
      for (std::size_t i = 0; i < code.k; ++i) {
        if (++msg[i] < q) break;
        msg[i] = 0;
      }
    }
  } else {
    for (std::size_t i = 0; i < code.k; ++i) check_word(code.basis.row_vector(i));
    std::mt19937_64 rng(0x10ca1);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(q - 1));
    std::vector<Elem> msg(code.k);
    for (std::size_t sIdx = 0; sIdx < samples; ++sIdx) {
      for (auto& x : msg) x = pick(rng);
      check_word(encode(code, msg));
    }
  }
  return v;
}

ConstructionReport make_report(const LinearCode& code, const DistancePolicy& policy) {
  const auto t0 = std::chrono::steady_clock::now();
  ConstructionReport rep;
  const Field& f = *code.field;
  rep.family = code.family;
  rep.q = f.order();
  rep.n = static_cast<long>(code.n);
  rep.k = static_cast<long>(code.k);
  rep.raw_rows = static_cast<long>(code.raw_rows());
  rep.kernel_dim = static_cast<long>(code.kernel_dim());
  rep.delta = code.delta;
  for (const auto& p : code.partitions) rep.r.push_back(static_cast<long>(p.r));
  rep.d_designed = code.designed_distance();
  rep.diagnostics = code.diagnostics;
  rep.counts = code.counts;
  rep.notes = code.notes;

  std::uint64_t total = 1;
  bool affordable = code.k > 0;
  for (std::size_t i = 0; i < code.k && affordable; ++i) {
    if (total > policy.exact_budget / rep.q) affordable = false;
    else total *= rep.q;
  }
  if (code.k == 0) {
    rep.method = "none";
  } else if (affordable) {
    rep.d_exact = min_distance_exhaustive(f, code.basis, policy.exact_budget).distance;
    rep.method = "exhaustive";
  } else if (policy.low_weight > 0 && rep.d_designed <= policy.low_weight) {
    auto lw = min_distance_low_weight(f, parity_check(code), policy.low_weight);
    if (lw.exact) rep.d_exact = lw.value;
    else rep.d_lower = std::max(lw.value, rep.d_designed);
    rep.method = "low-weight";
  } else {
    rep.d_lower = std::max<long>(rep.d_designed, 1);
    rep.method = "designed";
  }
  const long r = rep.r.empty() ? 1 : rep.r[0];
  if (code.k > 0) {
    rep.singleton = singleton_bound(rep.n, rep.k, r);
    rep.singleton_gap = rep.singleton - rep.distance_used();
  }
  auto loc = verify_locality(code);
  rep.locality_pass = loc.pass;
  rep.failing_sets = loc.failing;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::string ConstructionReport::to_text() const {
  std::ostringstream o;
  auto opt = [](const std::optional<long>& v) { return v ? std::to_string(*v) : std::string("-"); };
  o << "family: " << family << "\n";
  o << "q: " << q << "\n";
  o << "n: " << n << "\n";
  o << "k: " << k << "\n";
  o << "raw_rows: " << raw_rows << "\n";
  o << "kernel_dim: " << kernel_dim << "\n";
  o << "r:";
  for (long x : r) o << " " << x;
  o << "\n";
  o << "delta: " << delta << "\n";
  o << "d_designed: " << d_designed << (d_designed < 1 ? " (vacuous)" : "") << "\n";
  o << "d_exact: " << opt(d_exact) << "\n";
  o << "d_lower: " << opt(d_lower) << "\n";
  o << "method: " << method << "\n";
  o << "singleton_bound: " << singleton << "\n";
  o << "singleton_gap: " << singleton_gap << "\n";
  o << "locality_verdict: " << (locality_pass ? "pass" : "fail") << "\n";
  for (const auto& s : failing_sets) o << "failing_set: " << s << "\n";
  for (const auto& d : diagnostics)
    if (d.verdict != "pass" || !d.used)
      o << "coset: " << d.label << " " << d.verdict << (d.trivial ? " trivial" : "") << (d.used ? "" : " unused")
        << "\n";
  for (const auto& [key, val] : counts) o << "count." << key << ": " << val << "\n";
  for (const auto& s : notes) o << "note: " << s << "\n";
  return o.str();
}

std::string ConstructionReport::to_json() const {
  nlohmann::json j;
  j["family"] = family;
  j["q"] = q;
  j["n"] = n;
  j["k"] = k;
  j["raw_rows"] = raw_rows;
  j["kernel_dim"] = kernel_dim;
  j["r"] = r;
  j["delta"] = delta;
  j["d_designed"] = d_designed;
  j["d_exact"] = d_exact ? nlohmann::json(*d_exact) : nlohmann::json(nullptr);
  j["d_lower"] = d_lower ? nlohmann::json(*d_lower) : nlohmann::json(nullptr);
  j["method"] = method;
  j["singleton_bound"] = singleton;
  j["singleton_gap"] = singleton_gap;
  j["locality_verdict"] = locality_pass ? "pass" : "fail";
  j["failing_sets"] = failing_sets;
  nlohmann::json diag = nlohmann::json::array();
  for (const auto& d : diagnostics)
    diag.push_back({{"label", d.label}, {"trivial", d.trivial}, {"used", d.used}, {"verdict", d.verdict}});
  j["diagnostics"] = diag;
  j["counts"] = counts;
  j["notes"] = notes;
  j["seconds"] = seconds;
  return j.dump(2);
}

}  // namespace geolrc
