#include <gtest/gtest.h>

#include <filesystem>

#include "oneshot/errors.hpp"
#include "oneshot/io.hpp"
#include "support.hpp"

namespace oneshot {
namespace {

TEST(Io, ChannelRoundTripIsExact) {
  Rng rng(113);
  for (int trial = 0; trial < 20; ++trial) {
    const Channel ch = testing::random_channel(rng, 3, 5);
    const Channel back = io::parse_channel(io::format_channel(ch));
    EXPECT_EQ(back.matrix(), ch.matrix());
    EXPECT_EQ(back.inputs(), ch.inputs());
    EXPECT_EQ(back.outputs(), ch.outputs());
    EXPECT_EQ(io::format_channel(back), io::format_channel(ch));
  }
}

TEST(Io, CorrelationRoundTripIsExact) {
  for (const Correlation& d : {tsirelson_box(), device_E(2), pr_box(3, -1)}) {
    const Correlation back = io::parse_correlation(io::format_correlation(d));
    EXPECT_EQ(back.table(), d.table());
    EXPECT_EQ(back.num_s(), d.num_s());
  }
}

TEST(Io, StrategyRoundTrip) {
  const ProtocolStrategy st{{0, 1}, {{0, 2}, {1, 3}}, {0, 1, 1}, {{0, 1}, {1, 0}, {0, 0}}};
  EXPECT_EQ(io::parse_strategy(io::format_strategy(st)), st);
}

TEST(Io, ErrorsNameTheField) {
  try {
    io::parse_channel(R"({"name": "x", "inputs": ["a", "b"], "outputs": ["0", "1"], "matrix": [[0.5, 0.5], [0.6, 0.3]]})",
                      "bad.chan");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.chan"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("row"), std::string::npos) << e.what();
  }
  EXPECT_THROW(io::parse_channel("{not json", "broken"), ValidationError);
  EXPECT_THROW(io::parse_correlation(R"({"alphabets": [2, 2, 2], "table": []})"), ValidationError);
  EXPECT_THROW(io::parse_strategy(R"({"e1": [0, 1], "e2": "x", "d1": [], "d2": []})"), ValidationError);
}

TEST(Io, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "oneshot_io_test.chan";
  io::write_file(path.string(), io::format_channel(make_prevedel()));
  EXPECT_EQ(io::load_channel(path.string()).matrix(), make_prevedel().matrix());
  std::filesystem::remove(path);
  EXPECT_THROW(io::read_file(path.string()), ValidationError);
}

}  // namespace
}  // namespace oneshot
