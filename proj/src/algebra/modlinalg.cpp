#include "ph/modlinalg.hpp"

#include <algorithm>
#include <unordered_map>

namespace ph {

namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return u64((u128)a * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

Int from_u64(u64 x) {
  Int r;
  mpz_set_ui(r.get_mpz_t(), x);
  return r;
}

// primes just above 2^61, generated once
u64 prime_at(unsigned k) {
  static std::vector<u64> primes;
  while (primes.size() <= k) {
    Int x = primes.empty() ? Int(Int(1) << 61) : from_u64(primes.back());
    mpz_nextprime(x.get_mpz_t(), x.get_mpz_t());
    primes.push_back(mpz_get_ui(x.get_mpz_t()));
  }
  return primes[k];
}

using SVec = std::vector<std::pair<uint32_t, u64>>;  // sorted by index

// a <- a - f*b modulo p
void axpy(SVec& a, u64 f, const SVec& b, u64 p, SVec& tmp) {
  tmp.clear();
  size_t i = 0, j = 0;
  const u64 nf = p - f;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      tmp.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      tmp.emplace_back(b[j].first, mulmod(nf, b[j].second, p));
      ++j;
    } else {
      u64 v = (a[i].second + mulmod(nf, b[j].second, p)) % p;
      if (v) tmp.emplace_back(a[i].first, v);
      ++i, ++j;
    }
  }
  a.swap(tmp);
}

void scale(SVec& a, u64 f, u64 p) {
  for (auto& [k, v] : a) v = mulmod(v, f, p);
}

SVec reduce_column(const SparseColumn& c, u64 p) {
  SVec v;
  v.reserve(c.size());
  for (auto& [r, x] : c) {
    u64 m = mpz_fdiv_ui(x.get_mpz_t(), p);
    if (m) v.emplace_back(r, m);
  }
  std::sort(v.begin(), v.end());
  return v;
}

struct Eliminator {
  u64 p;
  std::unordered_map<uint32_t, size_t> lead_to_pivot;
  std::vector<SVec> vecs, combs;
  SVec tmp;

  explicit Eliminator(u64 prime) : p(prime) {}

  // returns true if the column became a new pivot; otherwise comb holds the relation
  bool insert(const SparseColumn& col, uint32_t id, SVec& comb) {
    SVec v = reduce_column(col, p);
    comb.assign(1, {id, 1});
    while (!v.empty()) {
      uint32_t lead = v.back().first;
      auto it = lead_to_pivot.find(lead);
      if (it == lead_to_pivot.end()) {
        u64 inv = invmod(v.back().second, p);
        scale(v, inv, p);
        scale(comb, inv, p);
        lead_to_pivot.emplace(lead, vecs.size());
        vecs.push_back(std::move(v));
        combs.push_back(comb);
        return true;
      }
      u64 f = v.back().second;
      axpy(v, f, vecs[it->second], p, tmp);
      axpy(comb, f, combs[it->second], p, tmp);
    }
    return false;
  }
};

struct ModRelation {
  size_t column;
  std::vector<size_t> support;  // columns taking part in the elimination up to `column`
  SVec comb;
};

// first dependent main column modulo p, restricted to the given column order
std::optional<ModRelation> find_mod(const std::vector<SparseColumn>& cols, const std::vector<size_t>& order,
                                    size_t first_main, u64 p, bool stop_on_helper_dependency) {
  Eliminator el(p);
  std::vector<size_t> support;
  SVec comb;
  for (size_t k = 0; k < order.size(); ++k) {
    size_t c = order[k];
    if (el.insert(cols[c], uint32_t(c), comb)) {
      support.push_back(c);
      continue;
    }
    if (c >= first_main) {
      support.push_back(c);
      return ModRelation{c, support, comb};
    }
    if (stop_on_helper_dependency) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Rat> rational_reconstruct(const Int& a, const Int& m) {
  Int bound;
  {
    Int h = m / 2;
    mpz_sqrt(bound.get_mpz_t(), h.get_mpz_t());
  }
  Int r0 = m, r1 = a % m;
  if (r1 < 0) r1 += m;
  Int t0 = 0, t1 = 1;
  while (r1 > bound) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int t2 = t0 - q * t1;
    r0 = r1, r1 = r2, t0 = t1, t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  Int g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return std::nullopt;
  Rat q(r1, t1);
  q.canonicalize();
  return q;
}

bool verify_kernel(const std::vector<SparseColumn>& cols, const std::vector<Int>& v) {
  std::unordered_map<uint32_t, Int> acc;
  for (size_t j = 0; j < cols.size() && j < v.size(); ++j) {
    if (v[j] == 0) continue;
    for (auto& [r, x] : cols[j]) acc[r] += x * v[j];
  }
  for (auto& [r, x] : acc)
    if (x != 0) return false;
  return true;
}

size_t rank_mod_prime(const std::vector<SparseColumn>& cols) {
  Eliminator el(prime_at(0));
  SVec comb;
  size_t rank = 0;
  for (size_t c = 0; c < cols.size(); ++c)
    if (el.insert(cols[c], uint32_t(c), comb)) ++rank;
  return rank;
}

std::optional<Dependency> first_dependency(const std::vector<SparseColumn>& cols, size_t first_main,
                                           const KernelLimits& lim) {
  std::vector<size_t> all(cols.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;
  unsigned next_prime = 0;
  while (next_prime < lim.max_primes) {
    auto rel = find_mod(cols, all, first_main, prime_at(next_prime++), false);
    if (!rel) return std::nullopt;  // full rank modulo p implies full rank over Q
    const size_t c = rel->column;
    const std::vector<size_t>& S = rel->support;
    std::vector<SparseColumn> sub;
    for (size_t j : S) sub.push_back(cols[j]);
    const size_t cpos = S.size() - 1;

    Int modulus = 1;
    std::vector<Int> residues(S.size(), 0);
    auto absorb = [&](const SVec& comb, u64 p) {
      std::vector<u64> val(S.size(), 0);
      std::unordered_map<size_t, size_t> where;
      for (size_t k = 0; k < S.size(); ++k) where[S[k]] = k;
      for (auto& [id, x] : comb) val[where.at(id)] = x;
      // CRT: r' = r + M * ((v - r) * M^{-1} mod p)
      u64 minv = invmod(mpz_fdiv_ui(modulus.get_mpz_t(), p), p);
      for (size_t k = 0; k < S.size(); ++k) {
        u64 rk = mpz_fdiv_ui(residues[k].get_mpz_t(), p);
        u64 d = (val[k] + p - rk) % p;
        u64 t = mulmod(d, minv, p);
        residues[k] += modulus * from_u64(t);
      }
      modulus *= from_u64(p);
    };
    absorb(rel->comb, prime_at(next_prime - 1));

    bool restart = false;
    std::vector<size_t> local(S.size());
    for (size_t k = 0; k < S.size(); ++k) local[k] = k;
    while (next_prime < lim.max_primes) {
      // try to reconstruct
      std::vector<Rat> q;
      bool ok = true;
      for (auto& r : residues) {
        auto x = rational_reconstruct(r, modulus);
        if (!x) {
          ok = false;
          break;
        }
        q.push_back(*x);
      }
      if (ok) {
        Int l = 1;
        for (auto& x : q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        std::vector<Int> w(S.size());
        for (size_t k = 0; k < S.size(); ++k) w[k] = Int(q[k] * l);
        if (verify_kernel(sub, w)) {
          Int g = 0;
          for (auto& x : w) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
          if (w[cpos] < 0) g = -g;
          Dependency dep;
          dep.column = c;
          dep.v.assign(cols.size(), 0);
          for (size_t k = 0; k < S.size(); ++k) dep.v[S[k]] = w[k] / g;
          dep.primes_used = next_prime;
          return dep;
        }
      }
      u64 p = prime_at(next_prime++);
      // relative order inside S is preserved, so the same relation is expected
      auto r2 = find_mod(sub, local, cpos, p, true);
      if (!r2) {
        // either c is independent modulo p (the first prime was unlucky) or an earlier column
        // collapsed (this prime is unlucky); distinguish with a full rank test on S
        Eliminator el(p);
        SVec comb;
        bool c_indep = true;
        for (size_t k = 0; k < S.size(); ++k) {
          bool piv = el.insert(sub[k], uint32_t(k), comb);
          if (k == cpos) c_indep = piv;
        }
        if (c_indep) {
          restart = true;
          break;
        }
        continue;
      }
      SVec mapped;
      for (auto& [k, x] : r2->comb) mapped.emplace_back(uint32_t(S[k]), x);
      absorb(mapped, p);
    }
    if (!restart) break;
  }
  throw std::runtime_error("first_dependency: prime budget exhausted");
}

}  // namespace ph
