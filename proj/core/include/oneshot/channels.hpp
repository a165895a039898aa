#pragma once

#include <span>
#include <string>
#include <vector>

namespace oneshot {

/// A discrete memoryless channel N(y|x), stored row-stochastic with one row
/// per input symbol.
class Channel {
 public:
  static constexpr double kEntryTol = 1e-12;
  static constexpr double kRowSumTol = 1e-9;

  // Validates the matrix shape and stochasticity. With renormalize = true,
  // rows whose sum is off by more than the tolerance (but positive) are
  // rescaled instead of rejected; tiny negative entries are clamped to zero.
  Channel(std::string name, std::vector<std::string> inputs, std::vector<std::string> outputs,
          std::vector<std::vector<double>> matrix, bool renormalize = false);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::vector<std::string>& outputs() const { return outputs_; }
  int num_inputs() const { return static_cast<int>(inputs_.size()); }
  int num_outputs() const { return static_cast<int>(outputs_.size()); }

  double operator()(int x, int y) const { return matrix_[x][y]; }
  std::span<const double> row(int x) const { return matrix_[x]; }
  const std::vector<std::vector<double>>& matrix() const { return matrix_; }

 private:
  std::string name_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::vector<std::vector<double>> matrix_;
};

// Channel with unnamed inputs "0".."r-1" and outputs "0".."k-1".
Channel make_channel(std::string name, std::vector<std::vector<double>> matrix);

// The 4-input, 6-output Prevedel channel; inputs and outputs are
// labelled from 1.
Channel make_prevedel();

// Input i in {0, ..., 2^m - 1}; output (j, t) with j uniform on
// {1, ..., 2^m - 1} and t = <b_i, b_j> mod 2, where b_i is the m-bit
// little-endian binary expansion of i. Outputs are ordered lexicographically
// by (j, t). Requires 1 <= m <= 8.
Channel make_hashing_channel(int m);

// Every row equal to the uniform distribution on k outputs.
Channel make_uniform_channel(int inputs, int outputs);

// r x r identity channel.
Channel make_noiseless_channel(int r);

double l1_distance(std::span<const double> u, std::span<const double> v);

// Largest pairwise 1-norm distance between the given rows.
double diam1(const std::vector<std::vector<double>>& rows);

// Best unassisted single-bit success probability, 1/2 + diam1(rows) / 4.
double succ_unassisted(const Channel& ch);

struct BruteForceSucc {
  double value = 0.5;
  int x0 = 0;
  int x1 = 0;
};

// Enumerates ordered encoder pairs x0 != x1 with maximum-likelihood decoding;
// ties go to the lexicographically smallest pair. Single-input channels give
// 1/2 with x0 = x1 = 0. Requires at most 64 inputs.
BruteForceSucc brute_force_succ(const Channel& ch);

}  // namespace oneshot
