#include "evolab/linear_world.hpp"

#include <cstddef>
#include <utility>

#include "evolab/errors.hpp"

namespace evolab {

std::string lin_label(const LinVec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s.push_back(';');
    s += v[i].str();
  }
  return s;
}

LinVec lin_parse(const std::string& label, int n) {
  LinVec v;
  std::size_t pos = 0;
  while (pos <= label.size()) {
    std::size_t next = label.find(';', pos);
    std::string token =
        label.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    try {
      v.emplace_back(token);
    } catch (const std::exception&) {
      throw IoError("bad vector coordinate '" + token + "' in state '" + label + "'");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (v.size() != static_cast<std::size_t>(n))
    throw IoError("state '" + label + "' has " + std::to_string(v.size()) +
                  " coordinates, expected " + std::to_string(n));
  return v;
}

bool lin_equal(const LinVec& a, const LinVec& b) { return a == b; }

LinVec matrix_apply(const LinMat& W, const LinVec& x) {
  LinVec y(W.size(), LinScalar(0));
  for (std::size_t i = 0; i < W.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (W[i][j] != 0 && x[j] != 0) y[i] += W[i][j] * x[j];
  return y;
}

std::vector<LinVec> matrix_flow(const LinMat& W, LinVec x0, int T) {
  std::vector<LinVec> stream;
  stream.reserve(static_cast<std::size_t>(T) + 1);
  stream.push_back(std::move(x0));
  for (int t = 1; t <= T; ++t) stream.push_back(matrix_apply(W, stream.back()));
  return stream;
}

int matrix_rank(LinMat W) {
  if (W.empty()) return 0;
  std::size_t rows = W.size();
  std::size_t cols = W[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && W[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(W[rank], W[pivot]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || W[r][col] == 0) continue;
      LinScalar factor = W[r][col] / W[rank][col];
      for (std::size_t c = col; c < cols; ++c) W[r][c] -= factor * W[rank][c];
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

std::optional<std::vector<LinScalar>> represent(const std::vector<LinVec>& basis,
                                                const LinVec& v) {
  std::size_t n = v.size();
  std::size_t k = basis.size();
  std::vector<std::vector<LinScalar>> aug(n, std::vector<LinScalar>(k + 1, LinScalar(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = basis[j][i];
    aug[i][k] = v[i];
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < k && rank < n; ++col) {
    std::size_t pivot = rank;
    while (pivot < n && aug[pivot][col] == 0) ++pivot;
    if (pivot == n) continue;
    std::swap(aug[rank], aug[pivot]);
    LinScalar lead = aug[rank][col];
    for (std::size_t c = col; c <= k; ++c) aug[rank][c] /= lead;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == rank || aug[r][col] == 0) continue;
      LinScalar factor = aug[r][col];
      for (std::size_t c = col; c <= k; ++c) aug[r][c] -= factor * aug[rank][c];
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < n; ++r)
    if (aug[r][k] != 0) return std::nullopt;
  std::vector<LinScalar> coeff(k, LinScalar(0));
  for (std::size_t i = 0; i < rank; ++i) coeff[pivot_cols[i]] = aug[i][k];
  return coeff;
}

namespace {

LinVec combine(const std::vector<LinVec>& vectors, const std::vector<LinScalar>& coeff,
               std::size_t n) {
  LinVec out(n, LinScalar(0));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (coeff[j] == 0) continue;
    for (std::size_t i = 0; i < n; ++i) out[i] += coeff[j] * vectors[j][i];
  }
  return out;
}

void check_dimensions(const std::vector<LinVec>& stream) {
  if (stream.empty()) throw SpecError("stream must contain a start state");
  for (const LinVec& x : stream)
    if (x.size() != stream[0].size())
      throw SpecError("stream states must share one dimension");
}

}  // namespace

bool flow_realizable(const std::vector<LinVec>& stream) {
  check_dimensions(stream);
  std::vector<LinVec> sources;
  std::vector<LinVec> images;
  for (std::size_t t = 1; t < stream.size(); ++t) {
    const LinVec& src = stream[t - 1];
    auto coeff = represent(sources, src);
    if (coeff) {
      LinVec forced = combine(images, *coeff, src.size());
      if (!lin_equal(forced, stream[t])) return false;
    } else {
      sources.push_back(src);
      images.push_back(stream[t]);
    }
  }
  return true;
}

LinMat random_lowrank_matrix(int n, int r, long long entry_bound, Rng& rng) {
  if (n < 1 || r < 1 || r > n) throw SpecError("matrix shape needs 1 <= r <= n");
  if (entry_bound < 0) throw SpecError("entry bound must be non-negative");
  LinMat a(static_cast<std::size_t>(n), LinVec(static_cast<std::size_t>(r)));
  LinMat b(static_cast<std::size_t>(r), LinVec(static_cast<std::size_t>(n)));
  for (auto& row : a)
    for (auto& e : row) e = LinScalar(rng.uniform_int(-entry_bound, entry_bound));
  for (auto& row : b)
    for (auto& e : row) e = LinScalar(rng.uniform_int(-entry_bound, entry_bound));
  LinMat w(static_cast<std::size_t>(n), LinVec(static_cast<std::size_t>(n), LinScalar(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < r; ++k) w[i][j] += a[i][k] * b[k][j];
  return w;
}

LinVec random_vector(int n, long long entry_bound, Rng& rng) {
  LinVec v(static_cast<std::size_t>(n));
  for (auto& e : v) e = LinScalar(rng.uniform_int(-entry_bound, entry_bound));
  return v;
}

LinearSpanSession::LinearSpanSession(int n) : n_(n) {
  if (n < 1) throw SpecError("linear learner needs dimension >= 1");
}

void LinearSpanSession::reset(const LinVec& x0, int, std::uint64_t) {
  if (x0.size() != static_cast<std::size_t>(n_))
    throw SpecError("start state dimension mismatch");
  sources_.clear();
  images_.clear();
  prev_ = x0;
}

LinVec LinearSpanSession::predict() {
  auto coeff = represent(sources_, prev_);
  if (!coeff) return LinVec(static_cast<std::size_t>(n_), LinScalar(0));
  return combine(images_, *coeff, static_cast<std::size_t>(n_));
}

void LinearSpanSession::observe(const LinVec& x) {
  if (!represent(sources_, prev_)) {
    sources_.push_back(prev_);
    images_.push_back(x);
  }
  prev_ = x;
}

Json LinearSpanSession::diagnostics() const {
  Json j;
  j["stored_pairs"] = sources_.size();
  return j;
}

LowrankForcingAdversary::LowrankForcingAdversary(int n, int r) : n_(n), r_(r) {
  if (n < 2) throw SpecError("forcing adversary needs dimension >= 2");
  if (r < 1 || r >= n) throw SpecError("forcing adversary needs 1 <= r <= n-1");
}

void LowrankForcingAdversary::reset(int horizon, std::uint64_t) {
  if (horizon < r_ + 1)
    throw SpecError("forcing adversary needs horizon >= r+1 = " + std::to_string(r_ + 1));
  t_ = 0;
  signs_.clear();
  matrix_.clear();
  resolved_ = false;
}

LinVec LowrankForcingAdversary::start() {
  prev_ = LinVec(static_cast<std::size_t>(n_), LinScalar(0));
  prev_[0] = 1;
  return prev_;
}

LinVec LowrankForcingAdversary::emit(const LinVec& prediction) {
  ++t_;
  if (t_ <= r_ + 1) {
    int coord = t_ <= r_ ? t_ + 1 : 2;
    LinVec plus(static_cast<std::size_t>(n_), LinScalar(0));
    plus[coord - 1] = 1;
    int sign = lin_equal(prediction, plus) ? -1 : +1;
    signs_.push_back(sign);
    plus[coord - 1] = sign;
    prev_ = plus;
    if (t_ == r_ + 1) resolve();
    return prev_;
  }
  prev_ = matrix_apply(matrix_, prev_);
  return prev_;
}

void LowrankForcingAdversary::resolve() {
  matrix_.assign(static_cast<std::size_t>(n_),
                 LinVec(static_cast<std::size_t>(n_), LinScalar(0)));
  matrix_[1][0] = signs_[0];
  for (int t = 1; t < r_; ++t) matrix_[t + 1][t] = signs_[t - 1] * signs_[t];
  matrix_[1][r_] = signs_[r_ - 1] * signs_[r_];
  resolved_ = true;
}

const LinMat& LowrankForcingAdversary::matrix() const {
  if (!resolved_) throw SpecError("forcing matrix is revealed after round r+1");
  return matrix_;
}

Json LowrankForcingAdversary::diagnostics() const {
  Json j;
  j["n"] = n_;
  j["r"] = r_;
  if (resolved_) {
    std::string signs;
    for (int s : signs_) signs.push_back(s > 0 ? '+' : '-');
    j["signs"] = signs;
    j["rank"] = matrix_rank(matrix_);
    Json rows = Json::array();
    for (const LinVec& row : matrix_) rows.push_back(lin_label(row));
    j["matrix"] = rows;
  }
  return j;
}

GameContext<LinVec> linear_context(int n) {
  GameContext<LinVec> ctx;
  ctx.label = [](const LinVec& v) { return lin_label(v); };
  ctx.equal = [](const LinVec& a, const LinVec& b) { return lin_equal(a, b); };
  ctx.realizability = [n](const std::vector<LinVec>& stream) {
    for (const LinVec& x : stream)
      if (x.size() != static_cast<std::size_t>(n))
        throw SpecError("stream states must have dimension " + std::to_string(n));
    RealizabilityOutcome out;
    out.realizable = flow_realizable(stream);
    return out;
  };
  return ctx;
}

}  // namespace evolab
