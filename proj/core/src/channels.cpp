#include "oneshot/channels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "oneshot/errors.hpp"

namespace oneshot {

Channel::Channel(std::string name, std::vector<std::string> inputs, std::vector<std::string> outputs,
                 std::vector<std::vector<double>> matrix, bool renormalize)
    : name_(std::move(name)), inputs_(std::move(inputs)), outputs_(std::move(outputs)), matrix_(std::move(matrix)) {
  if (inputs_.empty()) throw ValidationError("channel '" + name_ + "': input alphabet is empty");
  if (outputs_.empty()) throw ValidationError("channel '" + name_ + "': output alphabet is empty");
  if (matrix_.size() != inputs_.size())
    throw ValidationError("channel '" + name_ + "': matrix has " + std::to_string(matrix_.size()) +
                          " rows but " + std::to_string(inputs_.size()) + " inputs");
  for (std::size_t x = 0; x < matrix_.size(); ++x) {
    auto& row = matrix_[x];
    const std::string where = "channel '" + name_ + "', row " + std::to_string(x) + " (input '" + inputs_[x] + "')";
    if (row.size() != outputs_.size())
      throw ValidationError(where + ": expected " + std::to_string(outputs_.size()) + " entries, got " +
                            std::to_string(row.size()));
    double sum = 0.0;
    for (std::size_t y = 0; y < row.size(); ++y) {
      double& p = row[y];
      if (!std::isfinite(p)) throw ValidationError(where + ": non-finite entry in column " + std::to_string(y));
      if (p < -kEntryTol || p > 1.0 + kEntryTol)
        throw ValidationError(where + ": entry " + std::to_string(p) + " in column " + std::to_string(y) +
                              " is outside [0, 1]");
      p = std::clamp(p, 0.0, 1.0);
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTol) {
      if (!renormalize || sum <= 0.0)
        throw ValidationError(where + ": row sums to " + std::to_string(sum) + ", expected 1");
      for (double& p : row) p /= sum;
    }
  }
}

Channel make_channel(std::string name, std::vector<std::vector<double>> matrix) {
  std::vector<std::string> in, out;
  for (std::size_t x = 0; x < matrix.size(); ++x) in.push_back(std::to_string(x));
  const std::size_t k = matrix.empty() ? 0 : matrix.front().size();
  for (std::size_t y = 0; y < k; ++y) out.push_back(std::to_string(y));
  return Channel(std::move(name), std::move(in), std::move(out), std::move(matrix));
}

Channel make_prevedel() {
  constexpr double t = 1.0 / 3.0;
  std::vector<std::vector<double>> m = {
      {t, 0, t, 0, t, 0},
      {t, 0, 0, t, 0, t},
      {0, t, t, 0, 0, t},
      {0, t, 0, t, t, 0},
  };
  return Channel("prevedel", {"1", "2", "3", "4"}, {"1", "2", "3", "4", "5", "6"}, std::move(m));
}

Channel make_hashing_channel(int m) {
  if (m < 1 || m > 8) throw ValidationError("hashing channel parameter m must be in [1, 8], got " + std::to_string(m));
  const int r = 1 << m;
  const int nonzero = r - 1;
  std::vector<std::string> in, out;
  for (int i = 0; i < r; ++i) in.push_back(std::to_string(i));
  for (int j = 1; j < r; ++j)
    for (int t = 0; t < 2; ++t) out.push_back("(" + std::to_string(j) + "," + std::to_string(t) + ")");
  std::vector<std::vector<double>> mat(r, std::vector<double>(2 * nonzero, 0.0));
  for (int i = 0; i < r; ++i)
    for (int j = 1; j < r; ++j) {
      const int parity = std::popcount(static_cast<unsigned>(i & j)) & 1;
      mat[i][2 * (j - 1) + parity] = 1.0 / nonzero;
    }
  return Channel("hashing-" + std::to_string(m), std::move(in), std::move(out), std::move(mat));
}

Channel make_uniform_channel(int inputs, int outputs) {
  if (inputs < 1 || outputs < 1) throw ValidationError("uniform channel needs positive alphabet sizes");
  return make_channel("uniform", std::vector<std::vector<double>>(inputs, std::vector<double>(outputs, 1.0 / outputs)));
}

Channel make_noiseless_channel(int r) {
  if (r < 1) throw ValidationError("noiseless channel needs a positive alphabet size");
  std::vector<std::vector<double>> m(r, std::vector<double>(r, 0.0));
  for (int i = 0; i < r; ++i) m[i][i] = 1.0;
  return make_channel("noiseless-" + std::to_string(r), std::move(m));
}

double l1_distance(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw DimensionError("l1_distance: length mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) d += std::abs(u[i] - v[i]);
  return d;
}

double diam1(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw ValidationError("diam1: empty vector set");
  double d = 0.0;
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = a + 1; b < rows.size(); ++b) d = std::max(d, l1_distance(rows[a], rows[b]));
  return d;
}

double succ_unassisted(const Channel& ch) { return 0.5 + diam1(ch.matrix()) / 4.0; }

BruteForceSucc brute_force_succ(const Channel& ch) {
  if (ch.num_inputs() > 64) throw BudgetError("brute_force_succ: more than 64 inputs");
  BruteForceSucc best;
  bool found = false;
  for (int x0 = 0; x0 < ch.num_inputs(); ++x0) {
    for (int x1 = 0; x1 < ch.num_inputs(); ++x1) {
      if (x0 == x1) continue;
      // Bob guesses the bit whose input makes y more likely.
      double s = 0.0;
      for (int y = 0; y < ch.num_outputs(); ++y) s += std::max(ch(x0, y), ch(x1, y));
      s *= 0.5;
      if (!found || s > best.value) {
        best = {s, x0, x1};
        found = true;
      }
    }
  }
  return best;
}

}  // namespace oneshot
