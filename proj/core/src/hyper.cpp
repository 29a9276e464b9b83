#include "dwork/hyper.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace dwork {

namespace {

int lift(long long e, unsigned n) {
  long long r = e % static_cast<long long>(n);
  if (r <= 0) r += n;
  return static_cast<int>(r);
}

std::string var_name(unsigned i, unsigned nvars) {
  return nvars == 1 ? std::string("x") : "x" + std::to_string(i);
}

std::string power(const std::string& base, int e) {
  return e == 1 ? base : base + "^" + std::to_string(e);
}

}  // namespace

bool HyperShape::complete_pairing() const {
  std::vector<int> seq(betas.begin(), betas.end());
  for (unsigned i = l; i < k; ++i) seq.push_back(alphas[i]);
  std::vector<int> count(n, 0);
  for (int e : seq) {
    const int r = ((e % static_cast<int>(n)) + static_cast<int>(n)) % static_cast<int>(n);
    if (r == 0) return false;
    ++count[r];
  }
  for (unsigned b = 1; b < n; ++b) {
    if (count[b] != count[n - b]) return false;
  }
  return true;
}

void validate(const HyperShape& h) {
  if (h.n < 2) throw Error(Errc::InvalidArgument, "hypergeometric variety needs n >= 2");
  if (h.l < 2 || h.k < h.l) throw Error(Errc::InvalidArgument, "hypergeometric variety needs k >= l >= 2");
  if (h.alphas.size() != h.k || h.betas.size() != h.l) {
    throw Error(Errc::InvalidArgument, "exponent lists do not match (k, l)");
  }
  auto in_range = [&](int e) { return e >= 1 && e <= static_cast<int>(h.n); };
  if (!std::all_of(h.alphas.begin(), h.alphas.end(), in_range) ||
      !std::all_of(h.betas.begin(), h.betas.end(), in_range)) {
    throw Error(Errc::InvalidArgument, "exponents must be representatives in [1, n]");
  }
}

std::optional<DisplayEquation> display_form(const HyperShape& h) {
  validate(h);
  const unsigned n = h.n, l = h.l, k = h.k;
  DisplayEquation eq;
  eq.n = n;
  if (k == l && (h.alphas[l - 1] + h.betas[l - 1]) % static_cast<int>(n) == 0) {
    // x_l = 1/(lambda x_1...x_{l-1}); x_l^{a_l}(1-x_l)^{b_l} becomes an n-th
    // power times (1 - lambda x_1...x_{l-1})^{b_l}.
    eq.nvars = l - 1;
    eq.monomial.assign(h.alphas.begin(), h.alphas.begin() + (l - 1));
    std::vector<unsigned> all;
    for (unsigned i = 1; i < l; ++i) {
      eq.factors.push_back({{i}, false, h.betas[i - 1]});
      all.push_back(i);
    }
    eq.factors.push_back({all, true, h.betas[l - 1]});
    return eq;
  }
  if ((h.alphas[0] + h.betas[0]) % static_cast<int>(n) == 0) {
    // Eliminate x_1 instead; variables x_2..x_k are renamed x_1..x_{k-1}.
    eq.nvars = k - 1;
    eq.monomial.assign(h.alphas.begin() + 1, h.alphas.end());
    for (unsigned i = 2; i + 1 <= l; ++i) eq.factors.push_back({{i - 1}, false, h.betas[i - 1]});
    std::vector<unsigned> sum_vars;
    for (unsigned i = l; i <= k; ++i) sum_vars.push_back(i - 1);
    eq.factors.push_back({sum_vars, false, h.betas[l - 1]});
    std::vector<unsigned> prod_vars;
    for (unsigned i = 2; i <= l; ++i) prod_vars.push_back(i - 1);
    eq.factors.push_back({prod_vars, true, h.betas[0]});
    return eq;
  }
  return std::nullopt;
}

HyperShape shape_from_display(const DisplayEquation& eq) {
  const unsigned n = eq.n;
  if (eq.nvars == 0 || eq.monomial.size() != eq.nvars) {
    throw Error(Errc::InvalidArgument, "display equation has inconsistent variable count");
  }
  const DisplayEquation::Factor* prod = nullptr;
  std::map<unsigned, int> single;
  std::vector<const DisplayEquation::Factor*> sums;
  for (const auto& f : eq.factors) {
    if (f.lambda) {
      if (prod) throw Error(Errc::InvalidArgument, "display equation has several lambda factors");
      prod = &f;
    } else if (f.vars.size() == 1 && !single.count(f.vars[0])) {
      single[f.vars[0]] = f.exponent;
    } else {
      sums.push_back(&f);
    }
  }
  if (!prod) throw Error(Errc::InvalidArgument, "display equation has no lambda factor");
  const int c = prod->exponent;
  HyperShape h;
  h.n = n;

  const bool layout_a = sums.empty() && single.size() == eq.nvars && prod->vars.size() == eq.nvars;
  if (layout_a) {
    h.l = h.k = eq.nvars + 1;
    for (unsigned i = 1; i <= eq.nvars; ++i) {
      h.alphas.push_back(lift(eq.monomial[i - 1], n));
      h.betas.push_back(lift(single.at(i), n));
    }
    h.alphas.push_back(lift(-c, n));
    h.betas.push_back(lift(c, n));
    validate(h);
    return h;
  }

  // Layout with one variable eliminated in front: single factors on all
  // product variables but one, which opens the sum factor.
  const DisplayEquation::Factor* sum = nullptr;
  DisplayEquation::Factor one_var_sum;
  if (sums.size() == 1) {
    sum = sums[0];
  } else if (sums.empty()) {
    // The sum factor has a single variable and was filed as a single factor.
    for (unsigned v : prod->vars) {
      if (single.count(v)) {
        bool others = true;
        for (unsigned u : prod->vars) others = others && (u == v || single.count(u));
        if (others) {
          one_var_sum = {{v}, false, single[v]};
          single.erase(v);
          sum = &one_var_sum;
          break;
        }
      }
    }
  }
  if (!sum) throw Error(Errc::InvalidArgument, "display equation layout not recognised");
  std::vector<unsigned> shared;
  for (unsigned v : sum->vars) {
    if (std::find(prod->vars.begin(), prod->vars.end(), v) != prod->vars.end()) shared.push_back(v);
  }
  if (shared.size() != 1) throw Error(Errc::InvalidArgument, "sum and lambda factors must share one variable");
  std::vector<unsigned> order;  // display variables in shape order x_2..x_k
  for (unsigned v : prod->vars) {
    if (v == shared[0]) continue;
    if (!single.count(v)) throw Error(Errc::InvalidArgument, "lambda-factor variable without (1-x) factor");
    order.push_back(v);
  }
  order.push_back(shared[0]);
  for (unsigned v : sum->vars) {
    if (v != shared[0]) order.push_back(v);
  }
  if (order.size() != eq.nvars) throw Error(Errc::InvalidArgument, "display variables not all used");
  h.l = static_cast<unsigned>(prod->vars.size()) + 1;
  h.k = eq.nvars + 1;
  h.alphas.push_back(lift(-c, n));
  h.betas.push_back(lift(c, n));
  for (unsigned v : order) h.alphas.push_back(lift(eq.monomial[v - 1], n));
  for (unsigned i = 0; i + 1 < prod->vars.size(); ++i) h.betas.push_back(lift(single.at(order[i]), n));
  h.betas.push_back(lift(sum->exponent, n));
  validate(h);
  return h;
}

std::string to_string(const DisplayEquation& eq, const std::string& lambda_name) {
  std::ostringstream os;
  os << "y^" << eq.n << " =";
  for (unsigned i = 1; i <= eq.nvars; ++i) {
    os << ' ' << power(var_name(i, eq.nvars), eq.monomial[i - 1]);
  }
  for (const auto& f : eq.factors) {
    std::string inner = "1-";
    if (f.lambda) {
      inner += lambda_name;
      for (unsigned v : f.vars) inner += "*" + var_name(v, eq.nvars);
    } else {
      for (std::size_t j = 0; j < f.vars.size(); ++j) inner += (j ? "-" : "") + var_name(f.vars[j], eq.nvars);
    }
    os << ' ' << power("(" + inner + ")", f.exponent);
  }
  return os.str();
}

std::string to_string(const HyperShape& h, const std::string& lambda_name) {
  std::ostringstream os;
  os << "y^" << h.n << " =";
  for (unsigned i = 1; i <= h.k; ++i) os << ' ' << power("x" + std::to_string(i), h.alphas[i - 1]);
  for (unsigned i = 1; i < h.l; ++i) {
    os << ' ' << power("(1-x" + std::to_string(i) + ")", h.betas[i - 1]);
  }
  std::string sum = "1";
  for (unsigned i = h.l; i <= h.k; ++i) sum += "-x" + std::to_string(i);
  os << ' ' << power("(" + sum + ")", h.betas[h.l - 1]) << ", " << lambda_name;
  for (unsigned i = 1; i <= h.l; ++i) os << "*x" << i;
  os << " = 1";
  return os.str();
}

}  // namespace dwork
