#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "oneshot/assist.hpp"
#include "oneshot/errors.hpp"
#include "oneshot/protocol.hpp"
#include "support.hpp"

namespace oneshot {
namespace {

// Exhaustive search over every deterministic strategy, decoders included.
double full_enumeration(const Channel& ch, const Correlation& d) {
  const int nx = ch.num_inputs(), ny = ch.num_outputs();
  std::vector<int> radices;
  for (int a = 0; a < 2; ++a) radices.push_back(d.num_r());
  for (int i = 0; i < 2 * d.num_p(); ++i) radices.push_back(nx);
  for (int y = 0; y < ny; ++y) radices.push_back(d.num_s());
  for (int i = 0; i < ny * d.num_q(); ++i) radices.push_back(2);
  std::vector<int> digit(radices.size(), 0);
  double best = 0.0;
  while (true) {
    ProtocolStrategy st;
    std::size_t k = 0;
    st.e1 = {digit[k], digit[k + 1]};
    k += 2;
    st.e2.assign(2, std::vector<int>(d.num_p()));
    for (auto& row : st.e2)
      for (int& v : row) v = digit[k++];
    st.d1.resize(ny);
    for (int& v : st.d1) v = digit[k++];
    st.d2.assign(ny, std::vector<int>(d.num_q()));
    for (auto& row : st.d2)
      for (int& v : row) v = digit[k++];
    best = std::max(best, simulate(ch, d, st));
    std::size_t p = 0;
    while (p < digit.size() && ++digit[p] == radices[p]) digit[p++] = 0;
    if (p == digit.size()) break;
  }
  return best;
}

TEST(Simulate, PerfectProtocolOnHashing) {
  const AssistedResult r = optimal_assisted_succ(make_hashing_channel(2), device_E(2));
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_NEAR(simulate(make_hashing_channel(2), device_E(2), r.strategy), 1.0, 1e-12);
  EXPECT_NEAR(r.device_bound, 1.0, 1e-12);
}

TEST(Simulate, MatchesFullEnumeration) {
  Rng rng(101);
  for (int trial = 0; trial < 6; ++trial) {
    const Channel ch = testing::random_channel(rng, 2 + static_cast<int>(rng.below(2)), 2 + static_cast<int>(rng.below(2)));
    const Correlation d = trial % 2 ? testing::random_ns_box(rng) : testing::random_quantum_box(rng);
    EXPECT_NEAR(optimal_assisted_succ(ch, d).value, full_enumeration(ch, d), 1e-12);
  }
}

TEST(Simulate, FixedOutputDeviceGivesUnassistedValue) {
  Rng rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    const Channel ch = testing::random_channel(rng, 2 + static_cast<int>(rng.below(4)), 2 + static_cast<int>(rng.below(4)));
    const Correlation d = fixed_output_box(2, 2, 2, 2, static_cast<int>(rng.below(2)), static_cast<int>(rng.below(2)));
    EXPECT_NEAR(optimal_assisted_succ(ch, d).value, succ_unassisted(ch), 1e-12);
  }
}

TEST(Simulate, BoundedByNonSignalingValue) {
  Rng rng(107);
  for (int trial = 0; trial < 40; ++trial) {
    const Channel ch = testing::random_channel(rng, 2 + static_cast<int>(rng.below(4)), 2 + static_cast<int>(rng.below(4)));
    const Correlation d = testing::random_ns_box(rng);
    const AssistedResult r = optimal_assisted_succ(ch, d);
    EXPECT_LE(r.value, succ_ns(ch).value + 1e-8);
    EXPECT_TRUE(check_device_bound(ch, d, r.value).holds);
    ASSERT_TRUE(r.local_fraction_bound.has_value());
    EXPECT_TRUE(check_local_fraction_bound(ch, d, r.value).holds);
  }
}

TEST(Simulate, IndependentOfThreadCount) {
  Rng rng(109);
  const Channel ch = testing::random_channel(rng, 4, 4);
  const Correlation d = testing::random_ns_box(rng);
  SolverOptions four;
  four.threads = 4;
  const AssistedResult a = optimal_assisted_succ(ch, d), b = optimal_assisted_succ(ch, d, four);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.strategy, b.strategy);
}

TEST(Simulate, BudgetError) {
  EXPECT_THROW(optimal_assisted_succ(make_hashing_channel(3), device_E(3)), BudgetError);
  EXPECT_GT(encoder_count(make_hashing_channel(3), device_E(3)), kEncoderBudget);
  EXPECT_EQ(encoder_count(make_hashing_channel(2), device_E(2)), 4 * 65536);
}

TEST(Simulate, ValidatesStrategy) {
  const Channel ch = make_noiseless_channel(2);
  const Correlation d = pr_box(1, 1);
  ProtocolStrategy st{{0, 0}, {{0, 0}, {1, 1}}, {0, 0}, {{0, 0}, {1, 1}}};
  EXPECT_NEAR(simulate(ch, d, st), 1.0, 1e-15);
  st.e2[1][0] = 2;
  EXPECT_THROW(simulate(ch, d, st), ValidationError);
  st.e2[1][0] = 1;
  st.d2[0][0] = 2;
  EXPECT_THROW(simulate(ch, d, st), ValidationError);
  st.d2[0][0] = 0;
  st.d1.pop_back();
  EXPECT_THROW(simulate(ch, d, st), ValidationError);
}

TEST(Bounds, DeviceBoundForms) {
  const Channel t = make_hashing_channel(2);
  EXPECT_NEAR(check_device_bound(t, device_E(2), 1.0).bound, 1.0, 1e-12);
  EXPECT_NEAR(device_alphabet_bound(t, device_E(2)), 0.5 + 1.75 / 3.0, 1e-12);
  EXPECT_THROW(check_local_fraction_bound(t, device_E(2), 1.0), ValidationError);
}

}  // namespace
}  // namespace oneshot
