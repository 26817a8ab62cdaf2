#include "qsusy/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <tuple>

#include "qsusy/errors.hpp"

namespace qsusy {

Word parse_word(std::string_view text) {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if ((ch != 'a' && ch != 'A') || i + 1 >= text.size() || (text[i + 1] != '1' && text[i + 1] != '2'))
      throw OracleError(OracleError::Code::Parse,
                        "bad letter at offset " + std::to_string(i) + " in word '" + std::string(text) + "'");
    const bool dag = ch == 'A';
    const bool one = text[i + 1] == '1';
    w.push_back(dag ? (one ? Letter::A1Dag : Letter::A2Dag) : (one ? Letter::A1 : Letter::A2));
    i += 2;
  }
  return w;
}

std::string to_string(const Word& w) {
  std::string s;
  for (Letter l : w) {
    if (!s.empty()) s += ' ';
    s += is_dagger(l) ? 'A' : 'a';
    s += mode_of(l) == kMode1 ? '1' : '2';
  }
  return s;
}

Word adjoint(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (Letter& l : r) l = is_dagger(l) ? annihilator(mode_of(l)) : creator(mode_of(l));
  return r;
}

Word word_of(MonomialLabel m) {
  Word w(static_cast<std::size_t>(m.n), Letter::A1Dag);
  if (m.nu == 1) w.push_back(Letter::A2Dag);
  return w;
}

ExactStateVector ExactStateVector::vacuum() { return monomial({0, 0}); }

ExactStateVector ExactStateVector::monomial(MonomialLabel m, Rational coeff) {
  ExactStateVector v;
  v.add(m, coeff);
  return v;
}

void ExactStateVector::add(MonomialLabel m, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

ExactStateVector& ExactStateVector::operator+=(const ExactStateVector& other) {
  for (const auto& [m, c] : other.terms_) add(m, c);
  return *this;
}

ExactStateVector ExactStateVector::scaled(const Rational& s) const {
  ExactStateVector r;
  if (s == 0) return r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, Rational(c * s));
  return r;
}

Rational ExactStateVector::coefficient(MonomialLabel m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::size_t ExactStateVector::max_digits() const {
  std::size_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, decimal_digits(c));
  return d;
}

namespace {

Rational sign_power(const Rational& sign, long n) { return (n % 2 == 0) ? Rational(1) : sign; }

void check_digits(const ExactStateVector& v, const OracleOptions& opts) {
  if (v.max_digits() > opts.max_digits)
    throw OracleError(OracleError::Code::Overflow,
                      "rational coefficient exceeds " + std::to_string(opts.max_digits) + " digits");
}

// Vacuum-adjacent-first reduction. The memo lives for one top-level call.
class Reducer {
 public:
  Reducer(const DeformationParams& params, const OracleOptions& opts)
      : t_(exact_coefficient_tensor(params)), opts_(opts) {}

  ExactStateVector apply(const Word& w, const ExactStateVector& v) {
    ExactStateVector cur = v;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      ExactStateVector next;
      for (const auto& [m, c] : cur.terms()) {
        const ExactStateVector img = is_dagger(*it) ? create(mode_of(*it), m) : annihilate(mode_of(*it), m);
        next += img.scaled(c);
      }
      check_digits(next, opts_);
      cur = std::move(next);
    }
    return cur;
  }

 private:
  // a_k^dag on a canonical monomial, using R3/R4 to restore canonical order.
  ExactStateVector create(std::size_t mode, MonomialLabel m) const {
    if (mode == kMode1) return ExactStateVector::monomial({m.n + 1, m.nu});
    const Rational sign = sign_power(t_.exchange_sign, m.n);
    if (m.nu == 0) return ExactStateVector::monomial({m.n, 1}, sign);
    return ExactStateVector::monomial({m.n + 2, 0}, Rational(sign * *t_.quad_ratio));
  }

  ExactStateVector create(std::size_t mode, const ExactStateVector& v) const {
    ExactStateVector r;
    for (const auto& [m, c] : v.terms()) r += create(mode, m).scaled(c);
    return r;
  }

  // a_i on a canonical monomial: peel the leftmost creator a_j^dag and apply R1.
  const ExactStateVector& annihilate(std::size_t i, MonomialLabel m) {
    const auto key = std::make_tuple(i, m.n, m.nu);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    ExactStateVector result;
    if (m.n > 0 || m.nu > 0) {
      const std::size_t j = m.n > 0 ? kMode1 : kMode2;
      const MonomialLabel rest = m.n > 0 ? MonomialLabel{m.n - 1, m.nu} : MonomialLabel{0, 0};
      if (i == j) result.add(rest, Rational(1));
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) {
          const Rational& coeff = t_.c[i][j][k][l];
          if (coeff == 0) continue;
          const ExactStateVector inner = annihilate(l, rest);
          if (inner.is_zero()) continue;
          result += create(k, inner).scaled(coeff);
        }
      check_digits(result, opts_);
    }
    return memo_.emplace(key, std::move(result)).first->second;
  }

  ExactCoefficientTensor t_;
  OracleOptions opts_;
  std::map<std::tuple<std::size_t, long, int>, ExactStateVector> memo_;
};

}  // namespace

ExactStateVector apply_word(const Word& w, const ExactStateVector& v, const DeformationParams& params,
                            const OracleOptions& opts) {
  Reducer r(params, opts);
  return r.apply(w, v);
}

Rational vacuum_expectation(const Word& w, const DeformationParams& params, const OracleOptions& opts) {
  return apply_word(w, ExactStateVector::vacuum(), params, opts).coefficient({0, 0});
}

ExactStateVector monomial_state(long n1, long n2, const DeformationParams& params, const OracleOptions& opts) {
  Word w(static_cast<std::size_t>(n1), Letter::A1Dag);
  w.insert(w.end(), static_cast<std::size_t>(n2), Letter::A2Dag);
  return apply_word(w, ExactStateVector::vacuum(), params, opts);
}

Rational inner_product(MonomialLabel s, MonomialLabel t, const DeformationParams& params,
                       const OracleOptions& opts) {
  Word w = adjoint(word_of(s));
  const Word right = word_of(t);
  w.insert(w.end(), right.begin(), right.end());
  return vacuum_expectation(w, params, opts);
}

namespace {

enum class RedexKind { Tail, Contract, DaggerSwap, DaggerSquare, LowerSwap, LowerSquare };

struct Redex {
  RedexKind kind;
  std::size_t pos;
};

std::vector<Redex> find_redexes(const Word& w) {
  std::vector<Redex> out;
  for (std::size_t p = 0; p + 1 < w.size(); ++p) {
    const Letter x = w[p];
    const Letter y = w[p + 1];
    if (!is_dagger(x) && is_dagger(y)) out.push_back({RedexKind::Contract, p});
    else if (x == Letter::A2Dag && y == Letter::A1Dag) out.push_back({RedexKind::DaggerSwap, p});
    else if (x == Letter::A2Dag && y == Letter::A2Dag) out.push_back({RedexKind::DaggerSquare, p});
    else if (x == Letter::A2 && y == Letter::A1) out.push_back({RedexKind::LowerSwap, p});
    else if (x == Letter::A2 && y == Letter::A2) out.push_back({RedexKind::LowerSquare, p});
  }
  if (!w.empty() && !is_dagger(w.back())) out.push_back({RedexKind::Tail, w.size() - 1});
  return out;
}

Word splice(const Word& w, std::size_t pos, std::initializer_list<Letter> repl) {
  Word r(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
  r.insert(r.end(), repl.begin(), repl.end());
  r.insert(r.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + 2), w.end());
  return r;
}

}  // namespace

ExactStateVector reduce_randomized(const Word& w, const DeformationParams& params, std::uint64_t seed,
                                   const OracleOptions& opts) {
  const ExactCoefficientTensor t = exact_coefficient_tensor(params);
  std::mt19937_64 rng(seed);
  std::map<Word, Rational> pending{{w, Rational(1)}};
  ExactStateVector done;

  auto push = [&](Word word, const Rational& coeff) {
    if (coeff == 0) return;
    if (decimal_digits(coeff) > opts.max_digits)
      throw OracleError(OracleError::Code::Overflow,
                        "rational coefficient exceeds " + std::to_string(opts.max_digits) + " digits");
    auto [it, inserted] = pending.try_emplace(std::move(word), coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) pending.erase(it);
    }
  };

  while (!pending.empty()) {
    std::uniform_int_distribution<std::size_t> pick_term(0, pending.size() - 1);
    auto it = std::next(pending.begin(), static_cast<std::ptrdiff_t>(pick_term(rng)));
    const Word word = it->first;
    const Rational coeff = it->second;
    pending.erase(it);

    const std::vector<Redex> redexes = find_redexes(word);
    if (redexes.empty()) {
      // Normal form (a1dag)^n (a2dag)^nu.
      const auto n = static_cast<long>(std::count(word.begin(), word.end(), Letter::A1Dag));
      done.add({n, static_cast<int>(word.size()) - static_cast<int>(n)}, coeff);
      continue;
    }
    std::uniform_int_distribution<std::size_t> pick_redex(0, redexes.size() - 1);
    const Redex r = redexes[pick_redex(rng)];
    switch (r.kind) {
      case RedexKind::Tail:
        break;
      case RedexKind::Contract: {
        const std::size_t i = mode_of(word[r.pos]);
        const std::size_t j = mode_of(word[r.pos + 1]);
        if (i == j) push(splice(word, r.pos, {}), coeff);
        for (std::size_t k = 0; k < 2; ++k)
          for (std::size_t l = 0; l < 2; ++l)
            if (t.c[i][j][k][l] != 0)
              push(splice(word, r.pos, {creator(k), annihilator(l)}), Rational(coeff * t.c[i][j][k][l]));
        break;
      }
      case RedexKind::DaggerSwap:
        push(splice(word, r.pos, {Letter::A1Dag, Letter::A2Dag}), Rational(coeff * t.exchange_sign));
        break;
      case RedexKind::DaggerSquare:
        push(splice(word, r.pos, {Letter::A1Dag, Letter::A1Dag}), Rational(coeff * *t.quad_ratio));
        break;
      case RedexKind::LowerSwap:
        push(splice(word, r.pos, {Letter::A1, Letter::A2}), Rational(coeff * t.exchange_sign));
        break;
      case RedexKind::LowerSquare:
        push(splice(word, r.pos, {Letter::A1, Letter::A1}), Rational(coeff * *t.quad_ratio));
        break;
    }
  }
  return done;
}

Collinearity check_collinearity(const ExactStateVector& s1, const ExactStateVector& s2) {
  if (s1.is_zero() || s2.is_zero()) return {true, std::nullopt};
  const auto& [label, c2] = *s2.terms().begin();
  const Rational ratio = s1.coefficient(label) / c2;
  if (ratio == 0) return {false, std::nullopt};
  if (s1 == s2.scaled(ratio)) return {true, ratio};
  return {false, std::nullopt};
}

std::size_t exact_rank(const std::vector<ExactStateVector>& states) {
  std::vector<MonomialLabel> labels;
  for (const auto& s : states)
    for (const auto& [m, c] : s.terms()) labels.push_back(m);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  std::vector<std::vector<Rational>> rows;
  for (const auto& s : states) {
    std::vector<Rational> row;
    for (const auto& m : labels) row.push_back(s.coefficient(m));
    rows.push_back(std::move(row));
  }

  std::size_t rank = 0;
  for (std::size_t col = 0; col < labels.size() && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      const Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < labels.size(); ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace qsusy
