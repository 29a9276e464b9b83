#include "dwork/orbits.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace dwork {

namespace {

unsigned modn(long long a, unsigned n) {
  long long r = a % static_cast<long long>(n);
  if (r < 0) r += n;
  return static_cast<unsigned>(r);
}

unsigned inverse_mod(unsigned k, unsigned n) {
  for (unsigned x = 1; x < n; ++x) {
    if (k * x % n == 1) return x;
  }
  return 0;
}

void check_n(unsigned n) {
  if (!is_prime(n)) throw Error(Errc::NotPrime, "n = " + std::to_string(n) + " is not prime");
  if (n > kMaxClassN) throw Error(Errc::NTooLarge, "n = " + std::to_string(n) + " exceeds the class cap");
}

// Profile of the tuple transformed by x -> k x + j, read at position t:
// c'[t] = c[k^{-1}(t - j)].
struct Transform {
  unsigned kinv;
  unsigned j;
};

// Compares the transformed profile with the original lexicographically.
// Returns >0 if transformed is larger, <0 if smaller, 0 if equal.
int compare_transformed(const std::vector<unsigned>& c, Transform tf, unsigned n) {
  for (unsigned t = 0; t < n; ++t) {
    const unsigned src = (tf.kinv * ((t + n - tf.j) % n)) % n;
    if (c[src] != c[t]) return c[src] > c[t] ? 1 : -1;
  }
  return 0;
}

std::vector<unsigned> transformed(const std::vector<unsigned>& c, Transform tf, unsigned n) {
  std::vector<unsigned> out(n);
  for (unsigned t = 0; t < n; ++t) out[t] = c[(tf.kinv * ((t + n - tf.j) % n)) % n];
  return out;
}

Residues tuple_of(const std::vector<unsigned>& c) {
  Residues s;
  for (unsigned b = 0; b < c.size(); ++b) s.insert(s.end(), c[b], static_cast<int>(b));
  return s;
}

// Canonical profile: the lexicographically largest transformed profile,
// which corresponds to the lexicographically smallest sorted tuple.
std::vector<unsigned> canonical_profile(const std::vector<unsigned>& c, unsigned n) {
  std::vector<unsigned> best = c;
  for (unsigned k = 1; k < n; ++k) {
    const unsigned kinv = inverse_mod(k, n);
    for (unsigned j = 0; j < n; ++j) {
      auto cand = transformed(c, {kinv, j}, n);
      if (cand > best) best = std::move(cand);
    }
  }
  return best;
}

bool is_canonical(const std::vector<unsigned>& c, unsigned n) {
  for (unsigned k = 1; k < n; ++k) {
    const unsigned kinv = inverse_mod(k, n);
    for (unsigned j = 0; j < n; ++j) {
      if (compare_transformed(c, {kinv, j}, n) > 0) return false;
    }
  }
  return true;
}

unsigned K_of_profile(const std::vector<unsigned>& c, unsigned n) {
  unsigned K = 0;
  for (unsigned k = 1; k < n; ++k) {
    const unsigned kinv = inverse_mod(k, n);
    for (unsigned j = 0; j < n; ++j) {
      if (compare_transformed(c, {kinv, j}, n) == 0) {
        ++K;
        break;
      }
    }
  }
  return K;
}

std::uint64_t factorial(unsigned n) {
  std::uint64_t f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

// Depth-first search for arrangements whose first 2*pairs positions pair off.
class PairSearch {
 public:
  PairSearch(std::span<const int> v, std::span<const int> w, unsigned n, unsigned pairs)
      : n_(n), m_(static_cast<unsigned>(v.size())), pairs_(pairs), wcount_(n, 0) {
    for (int b : v) vmask_ |= 1u << b;
    for (int b : w) ++wcount_[b];
  }

  // Constraints used for the preferred, single-equation layout.
  bool zero_first = false;  // w_1 = 0
  bool zero_last = false;   // w_m = 0

  // Calls `emit` with each completed arrangement in lexicographic order of
  // (v_1, w_1, v_2, w_2, ...); stops when emit returns false.
  template <class Emit>
  bool run(Emit&& emit) {
    failed_.clear();
    return step(emit);
  }

 private:
  std::uint64_t wcode() const {
    std::uint64_t c = 0;
    for (unsigned b = 0; b < n_; ++b) c = c * 16 + wcount_[b];
    return c;
  }

  template <class Emit>
  bool step(Emit& emit) {
    const unsigned pos = static_cast<unsigned>(v_.size());
    if (pos == 2 * pairs_) return finish(emit);
    const auto key = std::make_pair(wcode(), vmask_);
    if (failed_.count(key)) return true;
    bool found = false;
    bool keep_going = true;
    for (unsigned va = 0; va < n_ && keep_going; ++va) {
      if (!(vmask_ >> va & 1)) continue;
      for (unsigned wa = 0; wa < n_ && keep_going; ++wa) {
        if (!wcount_[wa]) continue;
        if (zero_first && pos == 0 && wa != 0) continue;
        take(va, wa);
        const unsigned da = modn(static_cast<long long>(wa) - va, n_);
        for (unsigned vb = 0; vb < n_ && keep_going; ++vb) {
          if (!(vmask_ >> vb & 1)) continue;
          const unsigned wb = modn(static_cast<long long>(vb) - da, n_);
          if (!wcount_[wb]) continue;
          take(vb, wb);
          const std::size_t before = emitted_;
          keep_going = step(emit);
          if (emitted_ > before) found = true;
          give(vb, wb);
        }
        give(va, wa);
      }
    }
    if (!found && keep_going) failed_.insert(key);
    return keep_going;
  }

  template <class Emit>
  bool finish(Emit& emit) {
    if (zero_last && !wcount_[0]) return true;
    if (zero_first && pairs_ == 0 && !wcount_[0]) return true;
    Residues v = v_, w = w_;
    Residues tail_v, tail_w;
    for (unsigned b = 0; b < n_; ++b) {
      if (vmask_ >> b & 1) tail_v.push_back(static_cast<int>(b));
      tail_w.insert(tail_w.end(), wcount_[b], static_cast<int>(b));
    }
    if ((zero_last || (zero_first && pairs_ == 0)) && !tail_w.empty()) {
      // tail_w is ascending, so its first entry is the reserved zero.
      if (zero_last) std::rotate(tail_w.begin(), tail_w.begin() + 1, tail_w.end());
    }
    v.insert(v.end(), tail_v.begin(), tail_v.end());
    w.insert(w.end(), tail_w.begin(), tail_w.end());
    ++emitted_;
    return emit(Pairing{std::move(v), std::move(w), 2 * pairs_});
  }

  void take(unsigned vb, unsigned wb) {
    vmask_ &= ~(1u << vb);
    --wcount_[wb];
    v_.push_back(static_cast<int>(vb));
    w_.push_back(static_cast<int>(wb));
  }
  void give(unsigned vb, unsigned wb) {
    vmask_ |= 1u << vb;
    ++wcount_[wb];
    v_.pop_back();
    w_.pop_back();
  }

  unsigned n_, m_, pairs_;
  std::uint32_t vmask_ = 0;
  std::vector<unsigned> wcount_;
  Residues v_, w_;
  std::size_t emitted_ = 0;
  std::set<std::pair<std::uint64_t, std::uint32_t>> failed_;
};

void check_vw(std::span<const int> v, std::span<const int> w, unsigned n) {
  if (v.size() != w.size() || v.size() < 2) {
    throw Error(Errc::InvalidArgument, "v and w must have the same length m >= 2");
  }
  long long sv = 0, sw = 0;
  std::vector<int> seen(n, 0);
  for (int b : v) {
    if (b < 0 || b >= static_cast<int>(n) || seen[b]) throw Error(Errc::InvalidArgument, "v must hold distinct residues");
    seen[b] = 1;
    sv += b;
  }
  for (int b : w) {
    if (b < 0 || b >= static_cast<int>(n) || seen[b] == 1) {
      throw Error(Errc::InvalidArgument, "w must hold residues absent from v");
    }
    sw += b;
  }
  if (modn(sv - sw, n) != 0) throw Error(Errc::InvalidArgument, "sum of v and sum of w differ mod n");
}

}  // namespace

std::vector<unsigned> kprofile_of(std::span<const int> s, unsigned n) {
  std::vector<unsigned> c(n, 0);
  for (int x : s) ++c[modn(x, n)];
  return c;
}

std::uint64_t gamma_of(std::span<const unsigned> kprofile) {
  // Product of binomials avoids overflowing n! for the sizes in use.
  std::uint64_t g = 1;
  unsigned placed = 0;
  for (unsigned k : kprofile) {
    for (unsigned i = 1; i <= k; ++i) {
      g = g * (placed + i) / i;
    }
    placed += k;
  }
  return g;
}

unsigned K_of(std::span<const int> s, unsigned n) { return K_of_profile(kprofile_of(s, n), n); }

Residues canonical_rep(std::span<const int> s, unsigned n) {
  return tuple_of(canonical_profile(kprofile_of(s, n), n));
}

std::pair<Residues, Residues> vw_sequences(std::span<const unsigned> kprofile) {
  Residues v, w;
  for (unsigned b = 0; b < kprofile.size(); ++b) {
    if (kprofile[b] == 0) v.push_back(static_cast<int>(b));
    for (unsigned i = 1; i < kprofile[b]; ++i) w.push_back(static_cast<int>(b));
  }
  return {v, w};
}

unsigned max_pairing_size(std::span<const int> v, std::span<const int> w, unsigned n) {
  check_vw(v, w, n);
  const unsigned m = static_cast<unsigned>(v.size());
  const unsigned cap_pairs = (m - 2) / 2;
  Residues vs(v.begin(), v.end()), ws(w.begin(), w.end());
  std::sort(vs.begin(), vs.end());
  std::sort(ws.begin(), ws.end());
  unsigned best = 0;
  std::vector<unsigned> cnt(n);
  do {
    std::fill(cnt.begin(), cnt.end(), 0);
    for (unsigned i = 0; i < m; ++i) ++cnt[modn(ws[i] - vs[i], n)];
    unsigned pairs = 0;
    for (unsigned b = 1; b <= (n - 1) / 2; ++b) pairs += std::min(cnt[b], cnt[n - b]);
    best = std::max(best, pairs);
    if (best >= cap_pairs) break;
  } while (std::next_permutation(ws.begin(), ws.end()));
  return 2 * std::min(best, cap_pairs);
}

Pairing max_pairing(std::span<const int> v, std::span<const int> w, unsigned n) {
  const unsigned mprime = max_pairing_size(v, w, n);
  const int m = static_cast<int>(v.size());
  if (static_cast<int>(mprime) < 2 * m - static_cast<int>(n) + 1) {
    throw Error(Errc::PairingBoundViolated,
                "maximal pairing " + std::to_string(mprime) + " below 2m-n+1");
  }
  std::optional<Pairing> out;
  auto grab = [&](Pairing p) {
    out = std::move(p);
    return false;
  };
  for (bool prefer : {true, false}) {
    PairSearch search(v, w, n, mprime / 2);
    if (prefer) {
      if (static_cast<int>(mprime) == m - 2) {
        search.zero_last = true;
      } else {
        search.zero_first = true;
      }
    }
    search.run(grab);
    if (out) return *out;
  }
  throw Error(Errc::PairingBoundViolated, "no arrangement realises the maximal pairing");
}

std::vector<Pairing> maximal_pairings(std::span<const int> v, std::span<const int> w, unsigned n,
                                      std::size_t limit) {
  const unsigned mprime = max_pairing_size(v, w, n);
  std::vector<Pairing> out;
  if (limit == 0) return out;
  PairSearch search(v, w, n, mprime / 2);
  search.run([&](Pairing p) {
    // Vary the unpaired tail as well: every matching of its w entries.
    Residues tail(p.w.begin() + mprime, p.w.end());
    std::sort(tail.begin(), tail.end());
    do {
      Pairing alt = p;
      std::copy(tail.begin(), tail.end(), alt.w.begin() + mprime);
      out.push_back(std::move(alt));
      if (out.size() >= limit) return false;
    } while (std::next_permutation(tail.begin(), tail.end()));
    return true;
  });
  return out;
}

HyperShape hyper_shape_from_pairing(const Pairing& p, unsigned n) {
  const unsigned m = static_cast<unsigned>(p.v.size());
  const unsigned mp = p.mprime;
  auto lift = [n](long long e) {
    const unsigned r = modn(e, n);
    return static_cast<int>(r == 0 ? n : r);
  };
  HyperShape h;
  h.n = n;
  h.l = m;
  h.k = 2 * m - mp - 2;
  for (unsigned i = 0; i < m; ++i) h.alphas.push_back(lift(p.v[i]));
  for (unsigned j = mp; j + 2 < m; ++j) h.alphas.push_back(lift(p.v[j] - p.w[j]));
  for (unsigned j = 0; j + 1 < m; ++j) h.betas.push_back(lift(p.w[j] - p.v[j]));
  h.betas.push_back(lift(p.v[m - 2] - p.w[m - 2]));
  validate(h);
  return h;
}

ClassRecord make_class_record(std::span<const int> s, unsigned n) {
  check_n(n);
  if (n < 5) throw Error(Errc::InvalidArgument, "classes are tabulated for prime n >= 5");
  long long sum = 0;
  for (int x : s) sum += x;
  if (s.size() != n || modn(sum, n) != 0) {
    throw Error(Errc::InvalidArgument, "tuple must have n entries summing to 0 mod n");
  }
  ClassRecord rec;
  rec.n = n;
  rec.kprofile = canonical_profile(kprofile_of(s, n), n);
  rec.rep = tuple_of(rec.kprofile);
  rec.nprime = static_cast<unsigned>(
      std::count_if(rec.kprofile.begin(), rec.kprofile.end(), [](unsigned k) { return k != 0; }));
  rec.m = n - rec.nprime;
  rec.gamma = gamma_of(rec.kprofile);
  rec.K = K_of_profile(rec.kprofile, n);
  if (rec.nprime == 1) {
    rec.special = SpecialClass::zero;
    rec.ordered_classes = 1;
    return rec;
  }
  if (rec.nprime == n) {
    rec.special = SpecialClass::full;
    rec.ordered_classes = factorial(n - 1);
    return rec;
  }
  rec.ordered_classes = rec.gamma;
  auto [v, w] = vw_sequences(rec.kprofile);
  rec.pairing = max_pairing(v, w, n);
  rec.d = 2 * static_cast<int>(rec.m) - static_cast<int>(rec.pairing->mprime) - 3;
  rec.hyper = hyper_shape_from_pairing(*rec.pairing, n);
  rec.display = display_form(*rec.hyper);
  return rec;
}

std::vector<ClassRecord> enumerate_classes(unsigned n) {
  check_n(n);
  if (n < 5) throw Error(Errc::InvalidArgument, "classes are tabulated for prime n >= 5");
  std::vector<ClassRecord> out;
  std::vector<unsigned> c(n, 0);
  // Profiles with sum of k(b) = n and sum of b k(b) = 0 mod n.
  auto rec = [&](auto&& self, unsigned b, unsigned left, unsigned weight) -> void {
    if (b == n - 1) {
      c[b] = left;
      if ((weight + static_cast<unsigned long long>(b) * left) % n == 0 && is_canonical(c, n)) {
        out.push_back(make_class_record(tuple_of(c), n));
      }
      c[b] = 0;
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      c[b] = k;
      self(self, b + 1, left - k, (weight + b * k) % n);
    }
    c[b] = 0;
  };
  rec(rec, 0, n, 0);
  auto rank = [](SpecialClass s) { return s == SpecialClass::zero ? 0 : s == SpecialClass::full ? 1 : 2; };
  std::sort(out.begin(), out.end(), [&](const ClassRecord& a, const ClassRecord& b) {
    // Equal (d, m, gamma): larger representative first.
    return std::make_tuple(rank(a.special), a.d.value_or(-1), a.m, a.gamma, b.rep) <
           std::make_tuple(rank(b.special), b.d.value_or(-1), b.m, b.gamma, a.rep);
  });
  return out;
}

std::uint64_t partition_total(std::span<const ClassRecord> classes) {
  std::uint64_t total = 0;
  for (const auto& r : classes) {
    if (r.special != SpecialClass::none) {
      total += r.ordered_classes;
    } else {
      total += (r.n - 1) / r.K * r.gamma;
    }
  }
  return total;
}

}  // namespace dwork
