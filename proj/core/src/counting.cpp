#include "dwork/counting.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace dwork {

namespace {

constexpr std::uint32_t kRecursiveMaxQ = 2048;
constexpr std::uint32_t kFiberedMaxQ = 8192;
constexpr std::uint32_t kAddTableMaxQ = 4096;
constexpr std::uint8_t kNoRes = 0xff;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Splits [0, count) into `threads` contiguous blocks and sums fn(begin, end).
std::uint64_t parallel_sum(std::uint64_t count, unsigned threads,
                           const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& fn) {
  if (threads <= 1 || count <= 1) return fn(0, count);
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
  std::vector<std::uint64_t> partial(workers, 0);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t b = count * w / workers, e = count * (w + 1) / workers;
    pool.emplace_back([&, w, b, e] { partial[w] = fn(b, e); });
  }
  for (auto& t : pool) t.join();
  std::uint64_t total = 0;
  for (auto v : partial) total += v;
  return total;
}

/// Field arithmetic specialised for inner loops: prime fields use integer
/// arithmetic, small extensions an addition table.
class FastArith {
 public:
  explicit FastArith(const FieldCtx& F) : F_(F), q_(F.q()), prime_(F.f() == 1) {
    exp_.assign(F.exp_table().begin(), F.exp_table().end());
    exp_.insert(exp_.end(), F.exp_table().begin(), F.exp_table().end());
    log_.assign(F.log_table().begin(), F.log_table().end());
    if (!prime_ && q_ <= kAddTableMaxQ) {
      add_.resize(std::size_t{q_} * q_);
      for (Elem a = 0; a < q_; ++a)
        for (Elem b = 0; b < q_; ++b) add_[std::size_t{a} * q_ + b] = static_cast<std::uint16_t>(F.add(a, b));
    }
  }
  Elem add(Elem a, Elem b) const {
    if (prime_) {
      const Elem s = a + b;
      return s >= q_ ? s - q_ : s;
    }
    if (!add_.empty()) return add_[std::size_t{a} * q_ + b];
    return F_.add(a, b);
  }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem neg(Elem a) const { return F_.neg(a); }

 private:
  const FieldCtx& F_;
  std::uint32_t q_;
  bool prime_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint16_t> add_;
};

std::vector<Elem> nth_powers(const FieldCtx& F, unsigned n) {
  std::vector<Elem> out(F.q());
  for (Elem x = 0; x < F.q(); ++x) out[x] = F.pow(x, n);
  return out;
}

void check_projective_args(const FieldCtx& F, unsigned n, Elem psi) {
  if (n < 2) throw Error(Errc::InvalidArgument, "n must be at least 2");
  if (n % F.p() == 0) throw Error(Errc::PDividesN, "characteristic divides n");
  if (!F.contains(psi)) throw Error(Errc::InvalidArgument, "psi is not an element of the field");
  if (psi == 0) throw Error(Errc::PsiZero, "psi = 0 is not supported");
}

Kernel pick_kernel(Kernel k, std::uint32_t q) {
  if (k == Kernel::automatic) return q <= kRecursiveMaxQ ? Kernel::recursive : Kernel::fibered;
  if (k == Kernel::recursive && q > kRecursiveMaxQ) {
    throw Error(Errc::TableCapExceeded, "field too large for the recursive kernel");
  }
  if (k == Kernel::fibered && q > kFiberedMaxQ) {
    throw Error(Errc::TableCapExceeded, "field too large for the fibered kernel");
  }
  return k;
}

void set_projective(CountResult& res) {
  const std::uint64_t qm1 = res.q - 1;
  if (res.affine == 0 || (res.affine - 1) % qm1 != 0) {
    throw Error(Errc::CountInvariantViolated,
                "affine count " + std::to_string(res.affine) + " is not 1 mod q-1");
  }
  res.projective = (res.affine - 1) / qm1;
}

CountResult base_result(const char* name, const FieldCtx& F) {
  CountResult r;
  r.variety = name;
  r.p = F.p();
  r.f = F.f();
  r.q = F.q();
  return r;
}

// Sum over (x_1..x_{depth}) in F^depth split on x_1, with the remaining
// coordinates enumerated by an odometer. `leaf(B, C)` sees the running
// combination produced by `step`.
template <class Step, class Inner>
std::uint64_t odometer_sum(std::uint32_t q, unsigned depth, unsigned threads, Elem B0, Elem C0,
                           Step step, Inner inner) {
  // depth >= 1 variables are enumerated here; `inner(B, C)` handles one more.
  return parallel_sum(q, threads, [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t total = 0;
    std::vector<Elem> Bs(depth + 1), Cs(depth + 1), xs(depth, 0);
    for (std::uint64_t x1 = b; x1 < e; ++x1) {
      Bs[0] = B0;
      Cs[0] = C0;
      step(Bs[0], Cs[0], static_cast<Elem>(x1), Bs[1], Cs[1]);
      if (depth == 1) {
        total += inner(Bs[1], Cs[1]);
        continue;
      }
      // odometer over x_2..x_depth
      unsigned level = 1;
      xs[1] = 0;
      while (true) {
        step(Bs[level], Cs[level], xs[level], Bs[level + 1], Cs[level + 1]);
        if (level + 1 == depth) {
          total += inner(Bs[depth], Cs[depth]);
          // advance
          while (level >= 1) {
            if (++xs[level] < q) break;
            xs[level] = 0;
            --level;
          }
          if (level == 0) break;
        } else {
          ++level;
          xs[level] = 0;
        }
      }
    }
    return total;
  });
}

}  // namespace

unsigned default_threads() {
  if (const char* env = std::getenv("DWORK_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

CountResult count_dwork(const FieldCtx& F, unsigned n, Elem psi, const CountOptions& opt) {
  check_projective_args(F, n, psi);
  const auto t0 = Clock::now();
  const std::uint32_t q = F.q();
  const FastArith A(F);
  const auto pw = nth_powers(F, n);
  const Elem B0 = F.neg(F.mul(F.from_int(n), psi));  // -n psi
  CountResult res = base_result("dwork", F);

  Kernel kernel = opt.kernel;
  if (kernel == Kernel::naive) {
    double total = 1;
    for (unsigned i = 0; i < n; ++i) total *= q;
    if (total > 2e9) throw Error(Errc::InvalidArgument, "naive kernel limited to q^n <= 2e9");
    std::vector<Elem> xs(n, 0);
    std::uint64_t count = 0;
    while (true) {
      Elem s = 0, prod = 1;
      for (unsigned i = 0; i < n; ++i) {
        s = F.add(s, pw[xs[i]]);
        prod = F.mul(prod, xs[i]);
      }
      if (F.add(s, F.mul(B0, prod)) == 0) ++count;
      unsigned i = 0;
      while (i < n && ++xs[i] == q) xs[i++] = 0;
      if (i == n) break;
    }
    res.affine = count;
  } else {
    kernel = pick_kernel(kernel, q);
    // T[b][c] = #{x : x^n + b x + c = 0}
    std::vector<std::uint8_t> T(std::size_t{q} * q, 0);
    for (Elem b = 0; b < q; ++b) {
      for (Elem x = 0; x < q; ++x) {
        const Elem c = A.neg(A.add(pw[x], A.mul(b, x)));
        ++T[std::size_t{b} * q + c];
      }
    }
    if (kernel == Kernel::fibered) {
      // B = -n psi x_1...x_{n-1}, C = sum x_i^n over the first n-1 coordinates.
      auto step = [&](Elem B, Elem C, Elem x, Elem& B1, Elem& C1) {
        B1 = A.mul(B, x);
        C1 = A.add(C, pw[x]);
      };
      auto inner = [&](Elem B, Elem C) -> std::uint64_t {
        std::uint64_t s = 0;
        const std::uint8_t* row = nullptr;
        if (B == 0) {
          row = &T[0];
          for (Elem x = 0; x < q; ++x) s += row[A.add(C, pw[x])];
          return s;
        }
        for (Elem x = 0; x < q; ++x) s += T[std::size_t{A.mul(B, x)} * q + A.add(C, pw[x])];
        return s;
      };
      // n-1 coordinates enumerated before the table lookup: n-2 by the
      // odometer and the last one inside `inner`.
      if (n == 2) {
        res.affine = parallel_sum(q, opt.threads, [&](std::uint64_t b, std::uint64_t e) {
          std::uint64_t s = 0;
          for (std::uint64_t x = b; x < e; ++x) {
            s += T[std::size_t{A.mul(B0, static_cast<Elem>(x))} * q + pw[x]];
          }
          return s;
        });
      } else {
        res.affine = odometer_sum(q, n - 2, opt.threads, B0, 0, step, inner);
      }
    } else {
      // G_1 = T; G_{j+1}(B, C) = sum_x G_j(B x, C + x^n).
      std::vector<std::uint64_t> cur(T.begin(), T.end()), next(std::size_t{q} * q);
      for (unsigned level = 2; level < n; ++level) {
        parallel_sum(q, opt.threads, [&](std::uint64_t b, std::uint64_t e) {
          for (std::uint64_t B = b; B < e; ++B) {
            for (Elem C = 0; C < q; ++C) {
              std::uint64_t s = 0;
              for (Elem x = 0; x < q; ++x) {
                s += cur[std::size_t{A.mul(static_cast<Elem>(B), x)} * q + A.add(C, pw[x])];
              }
              next[B * q + C] = s;
            }
          }
          return std::uint64_t{0};
        });
        cur.swap(next);
      }
      std::uint64_t s = 0;
      for (Elem x = 0; x < q; ++x) s += cur[std::size_t{A.mul(B0, x)} * q + pw[x]];
      res.affine = s;
    }
  }
  set_projective(res);
  res.seconds = since(t0);
  return res;
}

CountResult count_mirror(const FieldCtx& F, unsigned n, Elem psi, const CountOptions& opt) {
  check_projective_args(F, n, psi);
  const auto t0 = Clock::now();
  const std::uint32_t q = F.q();
  const FastArith A(F);
  const auto pw = nth_powers(F, n);
  const Elem D0 = F.pow(F.mul(F.from_int(n), psi), n);  // (n psi)^n
  CountResult res = base_result("mirror", F);

  Kernel kernel = opt.kernel;
  if (kernel == Kernel::naive) {
    double total = 1;
    for (unsigned i = 0; i < n; ++i) total *= q;
    if (total > 2e9) throw Error(Errc::InvalidArgument, "naive kernel limited to q^n <= 2e9");
    std::vector<Elem> ys(n, 0);
    std::uint64_t count = 0;
    while (true) {
      Elem s = 0, prod = D0;
      for (unsigned i = 0; i < n; ++i) {
        s = F.add(s, ys[i]);
        prod = F.mul(prod, ys[i]);
      }
      if (pw[s] == prod) ++count;
      unsigned i = 0;
      while (i < n && ++ys[i] == q) ys[i++] = 0;
      if (i == n) break;
    }
    res.affine = count;
  } else {
    kernel = pick_kernel(kernel, q);
    // M[c][d] = #{y : (y + c)^n = d y}
    std::vector<std::uint8_t> M(std::size_t{q} * q, 0);
    for (Elem c = 0; c < q; ++c) {
      for (Elem y = 0; y < q; ++y) {
        const Elem v = pw[A.add(y, c)];
        if (y == 0) {
          if (v == 0) {
            for (Elem d = 0; d < q; ++d) ++M[std::size_t{c} * q + d];
          }
        } else {
          ++M[std::size_t{c} * q + F.div(v, y)];
        }
      }
    }
    if (kernel == Kernel::fibered) {
      auto step = [&](Elem C, Elem D, Elem y, Elem& C1, Elem& D1) {
        C1 = A.add(C, y);
        D1 = A.mul(D, y);
      };
      // Here the running pair is (D, C) in the odometer's (B, C) slots.
      auto step_bc = [&](Elem D, Elem C, Elem y, Elem& D1, Elem& C1) { step(C, D, y, C1, D1); };
      auto inner = [&](Elem D, Elem C) -> std::uint64_t {
        std::uint64_t s = 0;
        for (Elem y = 0; y < q; ++y) s += M[std::size_t{A.add(C, y)} * q + A.mul(D, y)];
        return s;
      };
      if (n == 2) {
        std::uint64_t s = 0;
        for (Elem y = 0; y < q; ++y) s += M[std::size_t{y} * q + A.mul(D0, y)];
        res.affine = s;
      } else {
        res.affine = odometer_sum(q, n - 2, opt.threads, D0, 0, step_bc, inner);
      }
    } else {
      // G_1 = M; G_{j+1}(C, D) = sum_y G_j(C + y, D y).
      std::vector<std::uint64_t> cur(M.begin(), M.end()), next(std::size_t{q} * q);
      for (unsigned level = 2; level < n; ++level) {
        parallel_sum(q, opt.threads, [&](std::uint64_t b, std::uint64_t e) {
          for (std::uint64_t C = b; C < e; ++C) {
            for (Elem D = 0; D < q; ++D) {
              std::uint64_t s = 0;
              for (Elem y = 0; y < q; ++y) {
                s += cur[std::size_t{A.add(static_cast<Elem>(C), y)} * q + A.mul(D, y)];
              }
              next[C * q + D] = s;
            }
          }
          return std::uint64_t{0};
        });
        cur.swap(next);
      }
      std::uint64_t s = 0;
      for (Elem y = 0; y < q; ++y) s += cur[std::size_t{y} * q + A.mul(D0, y)];
      res.affine = s;
    }
  }
  set_projective(res);
  res.seconds = since(t0);
  return res;
}

namespace {

struct ResidueTables {
  std::vector<std::uint8_t> log_n;      // dlog(x) mod n, kNoRes at 0
  std::vector<std::uint8_t> log_n_1m;   // dlog(1 - x) mod n, kNoRes at 1
};

ResidueTables residue_tables(const FieldCtx& F, unsigned n) {
  ResidueTables t;
  t.log_n.assign(F.q(), kNoRes);
  t.log_n_1m.assign(F.q(), kNoRes);
  for (Elem x = 1; x < F.q(); ++x) t.log_n[x] = static_cast<std::uint8_t>(F.dlog(x) % n);
  for (Elem x = 0; x < F.q(); ++x) {
    const Elem y = F.sub(1, x);
    if (y != 0) t.log_n_1m[x] = static_cast<std::uint8_t>(F.dlog(y) % n);
  }
  return t;
}

void check_order(const FieldCtx& F, unsigned n) {
  if (n < 2 || F.order() % n != 0) {
    throw Error(Errc::OrderUnavailable, "n does not divide q - 1");
  }
}

}  // namespace

CountResult count_hyper(const FieldCtx& F, const HyperVariety& hv, const CountOptions& opt) {
  const HyperShape& h = hv.shape;
  validate(h);
  if (!F.contains(hv.lambda)) throw Error(Errc::InvalidArgument, "lambda is not an element of the field");
  if (hv.lambda == 0) throw Error(Errc::LambdaZero, "lambda must be nonzero");
  check_order(F, h.n);
  const auto t0 = Clock::now();
  const std::uint32_t q = F.q();
  const unsigned n = h.n, l = h.l, k = h.k;
  const FastArith A(F);
  const ResidueTables R = residue_tables(F, n);
  const Elem lam_inv = F.inv(hv.lambda);

  CountResult res = base_result("hyper", F);
  // Outer split on x_1 in F^*.
  res.affine = parallel_sum(q - 1, opt.threads, [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t total = 0;
    std::vector<Elem> x(k, 1);
    for (std::uint64_t x1i = b; x1i < e; ++x1i) {
      x[0] = static_cast<Elem>(x1i + 1);
      // odometer over x_2..x_{l-1} in F^*
      for (unsigned i = 1; i + 1 < l; ++i) x[i] = 1;
      while (true) {
        bool zero = false;
        unsigned e_sum = 0;
        Elem prod = 1;
        for (unsigned i = 0; i + 1 < l; ++i) {
          prod = A.mul(prod, x[i]);
          e_sum += static_cast<unsigned>(h.alphas[i]) * R.log_n[x[i]];
          if (R.log_n_1m[x[i]] == kNoRes) {
            zero = true;
          } else {
            e_sum += static_cast<unsigned>(h.betas[i]) * R.log_n_1m[x[i]];
          }
        }
        const Elem xl = A.mul(lam_inv, F.inv(prod));
        x[l - 1] = xl;
        e_sum += static_cast<unsigned>(h.alphas[l - 1]) * R.log_n[xl];
        // free coordinates x_{l+1..k} over all of F
        const unsigned nfree = k - l;
        std::vector<Elem> fr(nfree, 0);
        while (true) {
          bool z = zero;
          unsigned es = e_sum;
          Elem s = xl;
          for (unsigned j = 0; j < nfree; ++j) {
            s = A.add(s, fr[j]);
            if (fr[j] == 0) {
              z = true;
            } else {
              es += static_cast<unsigned>(h.alphas[l + j]) * R.log_n[fr[j]];
            }
          }
          if (R.log_n_1m[s] == kNoRes) {
            z = true;
          } else {
            es += static_cast<unsigned>(h.betas[l - 1]) * R.log_n_1m[s];
          }
          if (z) {
            total += 1;
          } else if (es % n == 0) {
            total += n;
          }
          unsigned j = 0;
          while (j < nfree && ++fr[j] == q) fr[j++] = 0;
          if (j == nfree) break;
        }
        unsigned i = 1;
        while (i + 1 < l && ++x[i] == q) x[i++] = 1;
        if (i + 1 >= l) break;
      }
    }
    return total;
  });
  res.seconds = since(t0);
  return res;
}

CountResult count_display(const FieldCtx& F, const DisplayEquation& eq, Elem lambda,
                          const CountOptions& opt) {
  if (eq.nvars == 0 || eq.monomial.size() != eq.nvars) {
    throw Error(Errc::InvalidArgument, "display equation has inconsistent variable count");
  }
  if (!F.contains(lambda)) throw Error(Errc::InvalidArgument, "lambda is not an element of the field");
  if (lambda == 0) throw Error(Errc::LambdaZero, "lambda must be nonzero");
  check_order(F, eq.n);
  const auto t0 = Clock::now();
  const std::uint32_t q = F.q();
  const unsigned n = eq.n, nv = eq.nvars;
  const FastArith A(F);
  const ResidueTables R = residue_tables(F, n);

  CountResult res = base_result("display", F);
  res.affine = parallel_sum(q, opt.threads, [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t total = 0;
    std::vector<Elem> x(nv, 0);
    for (std::uint64_t x1 = b; x1 < e; ++x1) {
      x[0] = static_cast<Elem>(x1);
      for (unsigned i = 1; i < nv; ++i) x[i] = 0;
      while (true) {
        bool zero = false;
        unsigned es = 0;
        for (unsigned i = 0; i < nv && !zero; ++i) {
          const int a = eq.monomial[i];
          if (a == 0) continue;
          if (x[i] == 0) {
            zero = true;
          } else {
            es += static_cast<unsigned>(a) * R.log_n[x[i]];
          }
        }
        for (std::size_t fi = 0; fi < eq.factors.size() && !zero; ++fi) {
          const auto& fac = eq.factors[fi];
          Elem t;
          if (fac.lambda) {
            t = lambda;
            for (unsigned v : fac.vars) t = A.mul(t, x[v - 1]);
          } else {
            t = 0;
            for (unsigned v : fac.vars) t = A.add(t, x[v - 1]);
          }
          // factor is 1 - t
          if (R.log_n_1m[t] == kNoRes) {
            if (fac.exponent > 0) zero = true;
          } else {
            es += static_cast<unsigned>(fac.exponent) * R.log_n_1m[t];
          }
        }
        if (zero) {
          total += 1;
        } else if (es % n == 0) {
          total += n;
        }
        unsigned i = 1;
        while (i < nv && ++x[i] == q) x[i++] = 0;
        if (i >= nv) break;
      }
    }
    return total;
  });
  res.seconds = since(t0);
  return res;
}

CountResult count_dwork_over(const FieldCtx& base, unsigned r, unsigned n, Elem psi,
                             const CountOptions& opt, std::uint64_t table_cap) {
  const Extension ext = make_extension(base, r, table_cap);
  CountResult res = count_dwork(ext.field, n, ext.embed(psi), opt);
  res.r = r;
  return res;
}

CountResult count_mirror_over(const FieldCtx& base, unsigned r, unsigned n, Elem psi,
                              const CountOptions& opt, std::uint64_t table_cap) {
  const Extension ext = make_extension(base, r, table_cap);
  CountResult res = count_mirror(ext.field, n, ext.embed(psi), opt);
  res.r = r;
  return res;
}

}  // namespace dwork
