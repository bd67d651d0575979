#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "evolab/game.hpp"
#include "evolab/json.hpp"
#include "evolab/rng.hpp"

namespace evolab {

// Exact-rational vector states for the matrix-evolution world. Labels join
// the coordinates with ';', e.g. "1;-2/3;0".
using LinScalar = boost::multiprecision::cpp_rational;
using LinVec = std::vector<LinScalar>;
using LinMat = std::vector<LinVec>;  // rows

std::string lin_label(const LinVec& v);
LinVec lin_parse(const std::string& label, int n);
bool lin_equal(const LinVec& a, const LinVec& b);

LinVec matrix_apply(const LinMat& W, const LinVec& x);
std::vector<LinVec> matrix_flow(const LinMat& W, LinVec x0, int T);
int matrix_rank(LinMat W);

// Coefficients expressing v over the given vectors, when v lies in their span.
std::optional<std::vector<LinScalar>> represent(const std::vector<LinVec>& basis,
                                                const LinVec& v);

// Whether some matrix maps each state of the stream to the next one.
bool flow_realizable(const std::vector<LinVec>& stream);

// Product of two uniform integer factor matrices, n x r times r x n.
LinMat random_lowrank_matrix(int n, int r, long long entry_bound, Rng& rng);
LinVec random_vector(int n, long long entry_bound, Rng& rng);

// Remembers one independent (source, image) pair per observed transition and
// predicts by solving for the previous state over the stored sources; sources
// outside the span get the zero vector. Realizable streams of a rank-r matrix
// cost at most r+1 mistakes.
class LinearSpanSession : public LearnerSession<LinVec> {
 public:
  explicit LinearSpanSession(int n);

  void reset(const LinVec& x0, int horizon, std::uint64_t seed) override;
  LinVec predict() override;
  void observe(const LinVec& x) override;
  bool deterministic() const override { return true; }
  std::string id() const override { return "linear_span"; }
  Json diagnostics() const override;

 private:
  int n_;
  std::vector<LinVec> sources_;
  std::vector<LinVec> images_;
  LinVec prev_;
};

class ZeroVectorLearner : public LearnerSession<LinVec> {
 public:
  explicit ZeroVectorLearner(int n) : n_(n) {}

  void reset(const LinVec&, int, std::uint64_t) override {}
  LinVec predict() override { return LinVec(static_cast<std::size_t>(n_), LinScalar(0)); }
  void observe(const LinVec&) override {}
  bool deterministic() const override { return true; }
  std::string id() const override { return "baseline_zero"; }

 private:
  int n_;
};

// Forces r+1 mistakes against any learner while staying consistent with a
// rank-r matrix: rounds 1..r emit a signed fresh basis vector the learner did
// not predict, round r+1 emits a signed copy of e_2 (keeping the image span
// r-dimensional), and later rounds follow the revealed matrix.
class LowrankForcingAdversary : public AdversarySession<LinVec> {
 public:
  LowrankForcingAdversary(int n, int r);

  void reset(int horizon, std::uint64_t seed) override;
  LinVec start() override;
  LinVec emit(const LinVec& prediction) override;
  bool oblivious() const override { return false; }
  std::string id() const override { return "lowrank_forcing"; }
  Json diagnostics() const override;

  // Revealed matrix; available after round r+1.
  const LinMat& matrix() const;

 private:
  void resolve();

  int n_;
  int r_;
  int t_ = 0;
  std::vector<int> signs_;
  LinMat matrix_;
  bool resolved_ = false;
  LinVec prev_;
};

// Label/equality plumbing plus exact flow realizability; the world has no
// finite comparator.
GameContext<LinVec> linear_context(int n);

}  // namespace evolab
