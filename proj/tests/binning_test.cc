#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "stylobench/binning/bin_model.h"
#include "stylobench/errors.h"
#include "stylobench/random.h"
#include "test_util.h"

using namespace stylobench;

namespace {

AttributeColumns Column(const std::string& name, std::vector<double> values) {
  return {{name, std::move(values)}};
}

std::vector<double> Range(int lo, int hi) {
  std::vector<double> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

// Type-7 quantile written out independently: position 1 + (n - 1) p in
// 1-based order statistics.
double Type7(std::vector<double> x, double p) {
  std::sort(x.begin(), x.end());
  double pos = 1 + (static_cast<double>(x.size()) - 1) * p;
  double j = std::floor(pos);
  double g = pos - j;
  auto at = [&](double i) { return x[static_cast<std::size_t>(i) - 1]; };
  if (j >= static_cast<double>(x.size())) return at(static_cast<double>(x.size()));
  return (1 - g) * at(j) + g * at(j + 1);
}

}  // namespace

TEST_SUITE("binning") {

TEST_CASE("deciles of 1..100") {
  auto m = BinModel::Fit(Column("x", Range(1, 100)));
  const auto& b = m.at("x");
  REQUIRE(b.k() == 10);
  for (int i = 1; i <= 9; ++i) {
    CHECK(b.edges[i - 1] == doctest::Approx(Type7(Range(1, 100), i / 10.0)));
  }
  CHECK(b.edges.front() == doctest::Approx(10.9));
  CHECK(b.edges.back() == doctest::Approx(90.1));
  CHECK(b.labels.front() == "1-10");
  CHECK(b.labels[1] == "11-20");
  CHECK(b.labels.back() == ">=91");
  CHECK(b.count == 100);
}

TEST_CASE("quantile agrees with the independent oracle on random data") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(1 + rng.Index(40));
    for (auto& x : v) x = std::floor(rng.Uniform() * 20);
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (double p : {0.0, 0.1, 0.25, 0.5, 0.9, 1.0}) {
      CHECK(QuantileSorted(sorted, p) == doctest::Approx(Type7(v, p)));
    }
  }
}

TEST_CASE("ties merge bins") {
  std::vector<double> v(95, 0.0);
  v.insert(v.end(), 5, 1.0);
  auto m = BinModel::Fit(Column("x", v));
  const auto& b = m.at("x");
  CHECK(b.k() == 2);
  CHECK(b.edges == std::vector<double>{0.0});
  CHECK(b.labels == std::vector<std::string>{"0-0", ">=1"});
  CHECK(m.Assign("x", 0) == 0);
  CHECK(m.Assign("x", 1) == 1);
  CHECK(m.Assign("x", 0.5) == 1);
}

TEST_CASE("a constant attribute has a single bin") {
  auto m = BinModel::Fit(Column("x", std::vector<double>(30, 5.0)));
  const auto& b = m.at("x");
  CHECK(b.k() == 1);
  CHECK(b.labels == std::vector<std::string>{">=5"});
  CHECK(m.Assign("x", -100) == 0);
  CHECK(m.Assign("x", 100) == 0);
}

TEST_CASE("intervals are closed on the right") {
  auto m = BinModel::Fit(Column("x", Range(1, 100)));
  const auto& b = m.at("x");
  for (std::size_t i = 0; i < b.edges.size(); ++i) {
    CHECK(b.Assign(b.edges[i]) == i);
    CHECK(b.Assign(std::nextafter(b.edges[i], INFINITY)) == i + 1);
  }
}

TEST_CASE("monotone and clamped") {
  std::mt19937_64 gen(99);
  std::lognormal_distribution<double> dist(2.0, 0.8);
  std::vector<double> train(2000);
  for (auto& x : train) x = dist(gen);
  auto m = BinModel::Fit(Column("x", train));
  const auto& b = m.at("x");
  auto [lo, hi] = std::minmax_element(train.begin(), train.end());
  CHECK(b.Assign(*lo - 1e9) == 0);
  CHECK(b.Assign(*hi + 1e9) == b.k() - 1);
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    double a = rng.Uniform() * 200 - 50, c = rng.Uniform() * 200 - 50;
    if (a > c) std::swap(a, c);
    CHECK(b.Assign(a) <= b.Assign(c));
    CHECK(b.Assign(a) < b.k());
  }
}

TEST_CASE("small samples use fewer levels") {
  auto m = BinModel::Fit(Column("x", {3, 1, 2}));
  CHECK(m.at("x").k() == 3);
  CHECK_THROWS_AS(BinModel::Fit(Column("x", {})), NoValues);
}

TEST_CASE("readability labels keep one decimal and collisions gain precision") {
  std::vector<double> r;
  for (int i = 0; i < 100; ++i) r.push_back(4.0 + i * 0.03);
  auto m = BinModel::Fit(Column("readability", r));
  CHECK(m.at("readability").labels.front() == "4.0-4.3");
  std::vector<double> fine;
  for (int i = 0; i < 100; ++i) fine.push_back(i * 0.001);
  auto f = BinModel::Fit(Column("y", fine));
  const auto& labels = f.at("y").labels;
  CHECK(std::set<std::string>(labels.begin(), labels.end()).size() == labels.size());
  CHECK(labels.front() == "0.00-0.01");
}

TEST_CASE("labels map back to bins") {
  auto m = BinModel::Fit(Column("x", Range(1, 100)));
  for (std::size_t i = 0; i < m.at("x").k(); ++i) {
    CHECK(m.BinOfLabel("x", m.at("x").labels[i]) == i);
  }
  CHECK_THROWS_AS(m.BinOfLabel("x", "nope"), PrefixParseError);
  CHECK_THROWS_AS(m.Assign("y", 1), UnknownAttribute);
}

TEST_CASE("json round trip keeps order and edges exactly") {
  Rng rng(8);
  AttributeColumns cols;
  for (const char* name : {"zeta", "alpha", "readability"}) {
    std::vector<double> v(300);
    for (auto& x : v) x = rng.Uniform() * 37.3;
    cols.emplace_back(name, v);
  }
  BinFitOptions opts;
  opts.corpus_id = "c1";
  auto m = BinModel::Fit(cols, opts);
  auto path = testing::ScratchDir("binning") / "bins.json";
  m.Save(path);
  auto back = BinModel::Load(path);
  CHECK(back == m);
  CHECK(back.order() == std::vector<std::string>{"zeta", "alpha", "readability"});
  CHECK(back.corpus_id() == "c1");

  Json j = m.ToJson();
  j["format_version"] = 2;
  CHECK_THROWS_AS(BinModel::FromJson(j), ModelFormatError);
  j = m.ToJson();
  j["attributes"]["alpha"]["k"] = 4;
  CHECK_THROWS_AS(BinModel::FromJson(j), ModelFormatError);
}

TEST_CASE("binned vectors round trip through ordered json") {
  BinnedVector v = {{"b", 3, "3-4"}, {"a", 0, "0-1"}};
  auto back = BinnedFromJson(OrderedJson::parse(BinnedToJson(v, "doc_id", "d").dump()));
  CHECK(back == v);
}

}  // TEST_SUITE
