#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "kdi/correlation.hpp"
#include "kdi/data_io.hpp"
#include "kdi/errors.hpp"
#include "kdi/generators.hpp"
#include "kdi/rng.hpp"

using namespace kdi;

namespace {

std::filesystem::path scratch_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

} // namespace

TEST_SUITE_BEGIN("data_io");

TEST_CASE("benchmark mixtures validate and expose analytic moments") {
  for (int m = 1; m <= 5; ++m) {
    CHECK_NOTHROW(gen::MixtureSpec::benchmark(m).validate());
  }
  const auto m3 = gen::MixtureSpec::benchmark(3);
  CHECK(m3.mean() == doctest::Approx(0.67 * 1.0 + 0.33 * 4.0).epsilon(1e-12));
  CHECK_THROWS_AS(gen::MixtureSpec::benchmark(0), std::invalid_argument);
  CHECK_THROWS_AS(gen::MixtureSpec::benchmark(6), std::invalid_argument);
}

TEST_CASE("mixture sample moments match analytic values at a million draws") {
  for (int m = 1; m <= 5; ++m) {
    const auto spec = gen::MixtureSpec::benchmark(m);
    const int n = 1000000;
    const auto sample = gen::sample_mixture(spec, n, 123);
    double mean = 0.0;
    for (double v : sample.values) mean += v;
    mean /= n;
    const double se = std::sqrt(spec.variance() / n);
    CHECK(std::abs(mean - spec.mean()) < 3.0 * se);
  }
}

TEST_CASE("mixture sampling is deterministic and labels match components") {
  const auto spec = gen::MixtureSpec::benchmark(4);
  const auto a = gen::sample_mixture(spec, 500, 9);
  const auto b = gen::sample_mixture(spec, 500, 9);
  CHECK(a.values == b.values);
  CHECK(a.labels == b.labels);
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    if (a.labels[i] == 1) {
      CHECK(a.values[i] >= 10.0);  // shifted exponential component
    }
  }
  CHECK_THROWS_AS(gen::sample_mixture(spec, 0, 1), std::invalid_argument);
  gen::MixtureSpec bad = spec;
  bad.components[0].weight = 0.5;
  CHECK_THROWS_AS(gen::sample_mixture(bad, 10, 1), std::invalid_argument);
}

TEST_CASE("mixture spec json round trip") {
  const auto spec = gen::MixtureSpec::benchmark(5);
  const auto parsed = gen::MixtureSpec::from_json_text(spec.to_json_text());
  REQUIRE(parsed.components.size() == spec.components.size());
  const auto a = gen::sample_mixture(spec, 100, 3);
  const auto b = gen::sample_mixture(parsed, 100, 3);
  CHECK(a.values == b.values);
  CHECK_THROWS_AS(gen::MixtureSpec::from_json_text("{oops"), DataError);
  CHECK_THROWS_AS(gen::MixtureSpec::from_json_text(R"({"components":[{"weight":1.0,"kind":"cauchy"}]})"),
                  DataError);
}

TEST_CASE("lognormal generator") {
  const auto a = gen::gen_lognormal(10000, 7);
  const auto b = gen::gen_lognormal(10000, 7);
  CHECK(a == b);
  CHECK(a.size() == 10000);
  for (double v : a) CHECK(v > 0.0);
  CHECK_THROWS_AS(gen::gen_lognormal(0, 7), std::invalid_argument);
}

TEST_CASE("monotone nonlinear scenario with zero noise has spearman one") {
  gen::ScenarioParams params;
  params.noise_sd = 0.0;
  const auto xy = gen::gen_corr_scenario(gen::CorrScenario::MonotoneNonlinear, 200, params, 3);
  CHECK(spearman(xy.x, xy.y) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero outlier fraction reproduces the noisy linear stream") {
  gen::ScenarioParams params;
  params.outlier_frac = 0.0;
  const auto a = gen::gen_corr_scenario(gen::CorrScenario::LinearWithOutliers, 300, params, 11);
  const auto b = gen::gen_corr_scenario(gen::CorrScenario::NoisyLinear, 300, params, 11);
  CHECK(a.x == b.x);
  CHECK(a.y == b.y);
}

TEST_CASE("derived seeds are deterministic and distinct") {
  CHECK(rng::derive_seed(1, 0) == rng::derive_seed(1, 0));
  CHECK(rng::derive_seed(1, 0) != rng::derive_seed(1, 1));
  CHECK(rng::derive_seed(1, 0) != rng::derive_seed(2, 0));
}

TEST_CASE("csv parsing with policy cells") {
  const auto path = scratch_file("kdi_io_test.csv");
  write_file(path, "a,b\n1.5,abc\n2.5,\n-3,4.25\n");
  const auto table = load_csv(path.string());
  std::filesystem::remove(path);
  REQUIRE(table.columns.size() == 2);
  CHECK(table.n_rows == 3);
  CHECK(table.columns[0].name == "a");
  CHECK(table.columns[0].nan_count == 0);
  CHECK(table.columns[1].nan_count == 2);  // "abc" and the empty cell
  CHECK(std::isnan(table.columns[1].values[0]));
  CHECK(table.columns[1].values[2] == 4.25);
}

TEST_CASE("csv errors") {
  CHECK_THROWS_AS(load_csv("no_such_file_anywhere.csv"), DataError);
  const auto path = scratch_file("kdi_io_header_only.csv");
  write_file(path, "a,b\n");
  CHECK_THROWS_AS(load_csv(path.string(), {"a"}), DataError);  // empty column
  CHECK_THROWS_AS(load_csv(path.string(), {"zzz"}), DataError);
  std::filesystem::remove(path);
  const auto ragged = scratch_file("kdi_io_ragged.csv");
  write_file(ragged, "a,b\n1,2\n3\n");
  CHECK_THROWS_AS(load_csv(ragged.string()), DataError);
  std::filesystem::remove(ragged);
}

TEST_CASE("csv write/load round trip is bit exact") {
  CsvTable table;
  rng::Engine eng(13);
  CsvColumn col;
  col.name = "v";
  for (int i = 0; i < 200; ++i) {
    col.values.push_back(rng::normal(eng, 0.0, 1e7));
  }
  col.values.push_back(0.1);
  col.values.push_back(1.0 / 3.0);
  table.columns.push_back(col);
  table.n_rows = col.values.size();
  const auto path = scratch_file("kdi_io_roundtrip.csv");
  write_csv(path.string(), table);
  const auto back = load_csv(path.string());
  std::filesystem::remove(path);
  REQUIRE(back.columns[0].values.size() == col.values.size());
  CHECK(std::memcmp(back.columns[0].values.data(), col.values.data(),
                    col.values.size() * sizeof(double)) == 0);
}

TEST_CASE("to_column drops nans and keeps provenance") {
  CsvColumn csv;
  csv.name = "c";
  csv.values = {1.0, std::nan(""), 2.0};
  csv.nan_count = 1;
  const auto col = to_column(csv, "file.csv:c");
  CHECK(col.values == std::vector<double>{1.0, 2.0});
  CHECK(col.provenance == "file.csv:c");
  CsvColumn empty;
  empty.name = "e";
  empty.values = {std::nan("")};
  CHECK_THROWS_AS(to_column(empty, ""), DataError);
}

TEST_SUITE_END();
