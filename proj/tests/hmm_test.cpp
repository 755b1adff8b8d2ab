// tests/hmm_test.cpp

// Copyright 2026  The melhts Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "common/error.hpp"
#include "doctest.h"
#include "hmm/align.hpp"
#include "hmm/generate.hpp"
#include "hmm/model.hpp"
#include "hmm/train.hpp"
#include "hmm/tree.hpp"
#include "signal/delta.hpp"

using namespace melhts;
using namespace melhts::hmm;

namespace {

PhoneHmm RandomPhone(int states, std::size_t dim, std::mt19937 &rng) {
  std::normal_distribution<double> n(0.0, 1.5);
  std::uniform_real_distribution<double> v(0.5, 2.0), a(0.1, 0.9);
  PhoneHmm hmm;
  for (int s = 0; s < states; ++s) {
    Gaussian g;
    for (std::size_t d = 0; d < dim; ++d) {
      g.mean.push_back(n(rng));
      g.var.push_back(v(rng));
    }
    hmm.states.push_back({g, 0.0});
    hmm.self_loop.push_back(a(rng));
    hmm.durations.push_back({2.0, 1.0});
  }
  return hmm;
}

Matrix RandomFeatures(std::size_t T, std::size_t dim, std::mt19937 &rng) {
  std::normal_distribution<double> n(0.0, 1.5);
  Matrix x(T, dim);
  for (double &v : x.data()) v = n(rng);
  return x;
}

// Every left-to-right path, as a list of chain-state durations.
void EnumerateDurations(std::size_t states, std::size_t frames,
                        const std::function<void(const std::vector<std::size_t> &)> &fn) {
  std::vector<std::size_t> d(states, 1);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t j,
                                                          std::size_t left) {
    if (j + 1 == states) {
      d[j] = left;
      fn(d);
      return;
    }
    for (std::size_t k = 1; k + (states - j - 1) <= left; ++k) {
      d[j] = k;
      rec(j + 1, left - k);
    }
  };
  rec(0, frames);
}

double PathLogLik(const StateChain &chain, const Matrix &x,
                  const std::vector<std::size_t> &durs) {
  double ll = 0.0;
  std::size_t t = 0;
  for (std::size_t j = 0; j < durs.size(); ++j) {
    for (std::size_t k = 0; k < durs[j]; ++k, ++t)
      ll += chain.pdfs[j]->LogDensity(x.row(t));
    ll += static_cast<double>(durs[j] - 1) * chain.log_stay[j] + chain.log_move[j];
  }
  return ll;
}

struct BruteForce {
  double log_likelihood;
  std::vector<std::size_t> best_path;
  double best_log_likelihood;
  std::vector<std::vector<std::size_t>> all_paths;
  std::vector<double> all_log_likelihoods;
  int num_best = 0;
  Matrix occupancy;
  std::vector<double> stay, move;
};

BruteForce Enumerate(const StateChain &chain, const Matrix &x) {
  const std::size_t T = x.rows(), N = chain.size();
  std::vector<std::pair<double, std::vector<std::size_t>>> paths;
  EnumerateDurations(N, T, [&](const std::vector<std::size_t> &d) {
    std::vector<std::size_t> states;
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t k = 0; k < d[j]; ++k) states.push_back(j);
    paths.emplace_back(PathLogLik(chain, x, d), states);
  });
  BruteForce bf;
  bf.best_log_likelihood = -std::numeric_limits<double>::infinity();
  double mx = -std::numeric_limits<double>::infinity();
  for (const auto &[ll, p] : paths) {
    mx = std::max(mx, ll);
    if (ll > bf.best_log_likelihood) {
      bf.best_log_likelihood = ll;
      bf.best_path = p;
    }
  }
  double z = 0.0;
  for (const auto &[ll, p] : paths) {
    z += std::exp(ll - mx);
    bf.num_best += ll >= bf.best_log_likelihood - 1e-9;
    bf.all_paths.push_back(p);
    bf.all_log_likelihoods.push_back(ll);
  }
  bf.log_likelihood = mx + std::log(z);
  bf.occupancy = Matrix(T, N);
  bf.stay.assign(N, 0.0);
  bf.move.assign(N, 0.0);
  for (const auto &[ll, p] : paths) {
    const double w = std::exp(ll - bf.log_likelihood);
    for (std::size_t t = 0; t < T; ++t) {
      bf.occupancy(t, p[t]) += w;
      if (t + 1 < T) (p[t + 1] == p[t] ? bf.stay : bf.move)[p[t]] += w;
    }
    bf.move[N - 1] += w;
  }
  return bf;
}

std::vector<std::string> RandomPhoneSequence(std::mt19937 &rng) {
  std::uniform_int_distribution<int> len(1, 2), which(0, 1);
  std::vector<std::string> p;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) p.push_back(which(rng) ? "a" : "b");
  return p;
}

text::PhoneSet ToyPhones() {
  text::PhoneSet ps;
  ps.Add("a", text::PhoneClass::kVowel);
  ps.Add("i", text::PhoneClass::kVowel);
  ps.Add("k", text::PhoneClass::kStop);
  ps.Add("m", text::PhoneClass::kNasal);
  ps.Add("s", text::PhoneClass::kFricative);
  return ps;
}

text::ContextLabel Label(std::string ll, std::string l, std::string c,
                         std::string r, std::string rr,
                         text::SyllablePosition pos = text::SyllablePosition::kNucleus) {
  text::ContextLabel lab;
  lab.ll = std::move(ll);
  lab.l = std::move(l);
  lab.c = std::move(c);
  lab.r = std::move(r);
  lab.rr = std::move(rr);
  lab.position = pos;
  return lab;
}

}  // namespace

TEST_CASE("Gaussian log density and moments") {
  Gaussian g{{1.0, -2.0}, {4.0, 0.25}};
  std::vector<double> x = {2.0, -1.5};
  const double expect = -0.5 * (2 * std::log(2 * std::numbers::pi) +
                                std::log(4.0) + std::log(0.25) + 0.25 + 1.0);
  CHECK(g.LogDensity(x) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(PreparedGaussian(g).LogDensity(x) == doctest::Approx(expect).epsilon(1e-14));

  GaussianStats st;
  for (double v : {3.0, 5.0, 7.0}) st.Add(std::vector<double>{v});
  std::vector<double> floor = {1e-3};
  CHECK(st.Mean()[0] == doctest::Approx(5.0));
  CHECK(st.Variance(floor)[0] == doctest::Approx(8.0 / 3.0));
}

TEST_CASE("duration moments") {
  std::vector<double> a = {3, 5, 7};
  auto d = EstimateDuration(a);
  CHECK(d.mean == doctest::Approx(5.0));
  CHECK(d.var == doctest::Approx(8.0 / 3.0));
  std::vector<double> b = {5, 5, 5, 5};
  d = EstimateDuration(b);
  CHECK(d.mean == 5.0);
  CHECK(d.var == 1.0);
  CHECK_THROWS_AS(EstimateDuration(std::vector<double>{}), Error);
}

TEST_CASE("flat start splits utterances equally") {
  SUBCASE("100 frames over 10 phones") {
    TrainingUtterance u;
    u.id = "u";
    u.features = Matrix(100, 1);
    for (std::size_t t = 0; t < 100; ++t) u.features(t, 0) = static_cast<double>(t);
    for (int p = 0; p < 10; ++p) u.phones.push_back("p" + std::to_string(p));
    std::vector<double> floor = {1e-6};
    auto m = FlatStartInit({u}, 5, floor);
    REQUIRE(m.size() == 10);
    for (int p = 0; p < 10; ++p) {
      const auto &hmm = m.at("p" + std::to_string(p));
      double frames = 0;
      for (const auto &st : hmm.states) frames += st.occupancy;
      CHECK(frames == 10.0);
      CHECK(hmm.states[0].pdf.mean[0] == doctest::Approx(10.0 * p + 0.5));
      CHECK(hmm.self_loop[0] == 0.5);
    }
  }
  SUBCASE("constant features give the floor variance") {
    TrainingUtterance u;
    u.features = Matrix(30, 2, 3.5);
    u.phones = {"a", "b"};
    std::vector<double> floor = {0.01, 0.02};
    auto m = FlatStartInit({u}, 3, floor);
    for (const auto &[phone, hmm] : m)
      for (const auto &st : hmm.states) {
        CHECK(st.pdf.mean[0] == 3.5);
        CHECK(st.pdf.var == floor);
      }
  }
  SUBCASE("two-utterance moments") {
    // u1: 6 frames, phones a b -> a gets 0..2, b gets 3..5; S = 1.
    // u2: 4 frames, phone a -> a gets 0..3.
    TrainingUtterance u1, u2;
    u1.features = Matrix(6, 1);
    u2.features = Matrix(4, 1);
    const double v1[] = {1, 2, 3, 10, 20, 30};
    const double v2[] = {4, 4, 6, 6};
    for (int t = 0; t < 6; ++t) u1.features(t, 0) = v1[t];
    for (int t = 0; t < 4; ++t) u2.features(t, 0) = v2[t];
    u1.phones = {"a", "b"};
    u2.phones = {"a"};
    std::vector<double> floor = {1e-9};
    auto m = FlatStartInit({u1, u2}, 1, floor);
    // a: {1,2,3,4,4,6,6}
    const double mean_a = 26.0 / 7.0;
    double var_a = 0;
    for (double v : {1, 2, 3, 4, 4, 6, 6}) var_a += (v - mean_a) * (v - mean_a);
    var_a /= 7.0;
    CHECK(m.at("a").states[0].pdf.mean[0] == doctest::Approx(mean_a));
    CHECK(m.at("a").states[0].pdf.var[0] == doctest::Approx(var_a));
    CHECK(m.at("b").states[0].pdf.mean[0] == doctest::Approx(20.0));
  }
  SUBCASE("short utterances are skipped, all short is an error") {
    TrainingUtterance ok, short_one;
    ok.id = "ok";
    ok.features = Matrix(10, 1, 1.0);
    ok.phones = {"a"};
    short_one.id = "short";
    short_one.features = Matrix(4, 1, 1.0);
    short_one.phones = {"a", "b"};
    std::vector<double> floor = {1e-3};
    FlatStartReport rep;
    auto m = FlatStartInit({ok, short_one}, 3, floor, &rep);
    CHECK(rep.skipped == std::vector<std::string>{"short"});
    CHECK(m.count("b") == 0);
    CHECK_THROWS_AS(FlatStartInit({short_one}, 3, floor), Error);
  }
}

TEST_CASE("single-state Viterbi covers the utterance") {
  std::mt19937 rng(3);
  PhoneModels models{{"a", RandomPhone(1, 2, rng)}};
  auto x = RandomFeatures(7, 2, rng);
  std::vector<std::string> phones = {"a"};
  auto al = ViterbiAlign(models, x, phones);
  double expect = 0;
  for (std::size_t t = 0; t < 7; ++t) expect += models.at("a").states[0].pdf.LogDensity(x.row(t));
  const double a = models.at("a").self_loop[0];
  expect += 6 * std::log(a) + std::log(1 - a);
  CHECK(al.log_likelihood == doctest::Approx(expect).epsilon(1e-12));
  CHECK(al.phones[0].start_frame == 0);
  CHECK(al.phones[0].end_frame == 7);
}

TEST_CASE("Viterbi matches exhaustive path enumeration") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> states(1, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const int S = states(rng);
    PhoneModels models{{"a", RandomPhone(S, 3, rng)}, {"b", RandomPhone(S, 3, rng)}};
    auto phones = RandomPhoneSequence(rng);
    const std::size_t N = phones.size() * static_cast<std::size_t>(S);
    std::uniform_int_distribution<std::size_t> frames(N, 10);
    auto x = RandomFeatures(frames(rng), 3, rng);
    auto chain = BuildChain(models, phones);
    auto bf = Enumerate(chain, x);
    auto al = ViterbiAlign(chain, x, phones);
    CHECK(std::abs(al.log_likelihood - bf.best_log_likelihood) <= 1e-9);
    // The returned path is one of the enumerated paths and scores the
    // reported likelihood; it is the best path whenever that is unique.
    bool found = false;
    for (std::size_t i = 0; i < bf.all_paths.size(); ++i) {
      if (bf.all_paths[i] != al.state_path) continue;
      found = true;
      CHECK(std::abs(bf.all_log_likelihoods[i] - al.log_likelihood) <= 1e-9);
    }
    CHECK(found);
    if (bf.num_best == 1) CHECK(al.state_path == bf.best_path);
  }
}

TEST_CASE("Viterbi prefers the correct phone order") {
  std::mt19937 rng(5);
  PhoneModels models;
  for (const char *p : {"a", "b"}) {
    PhoneHmm hmm = RandomPhone(2, 2, rng);
    for (auto &st : hmm.states) st.pdf = Gaussian{{p[0] == 'a' ? -5.0 : 5.0, 0.0}, {1.0, 1.0}};
    models[p] = hmm;
  }
  Matrix x(8, 2);
  for (std::size_t t = 0; t < 8; ++t) x(t, 0) = t < 4 ? -5.0 : 5.0;
  std::vector<std::string> right = {"a", "b"}, wrong = {"b", "a"};
  auto good = ViterbiAlign(models, x, right);
  auto bad = ViterbiAlign(models, x, wrong);
  CHECK(good.log_likelihood > bad.log_likelihood);
  CHECK(good.phones[0].end_frame == 4);
  CHECK(good.phones[1].start_frame == 4);
}

TEST_CASE("too few frames is an alignment error") {
  std::mt19937 rng(1);
  PhoneModels models{{"a", RandomPhone(3, 2, rng)}};
  auto x = RandomFeatures(2, 2, rng);
  std::vector<std::string> phones = {"a"};
  try {
    ViterbiAlign(models, x, phones);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kAlignment);
  }
}

TEST_CASE("forward-backward matches brute-force posteriors") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    PhoneModels models{{"a", RandomPhone(2, 2, rng)}, {"b", RandomPhone(2, 2, rng)}};
    auto phones = RandomPhoneSequence(rng);
    const std::size_t N = phones.size() * 2;
    std::uniform_int_distribution<std::size_t> frames(N, 8);
    auto x = RandomFeatures(frames(rng), 2, rng);
    auto chain = BuildChain(models, phones);
    auto bf = Enumerate(chain, x);
    auto fb = ForwardBackward(chain, x);
    CHECK(fb.log_likelihood == doctest::Approx(bf.log_likelihood).epsilon(1e-12));
    for (std::size_t t = 0; t < x.rows(); ++t)
      for (std::size_t j = 0; j < N; ++j)
        CHECK(std::abs(fb.occupancy(t, j) - bf.occupancy(t, j)) <= 1e-10);
    for (std::size_t j = 0; j < N; ++j) {
      CHECK(std::abs(fb.stay[j] - bf.stay[j]) <= 1e-10);
      CHECK(std::abs(fb.move[j] - bf.move[j]) <= 1e-10);
    }
  }
}

TEST_CASE("one re-estimation of a single-state phone gives the plain mean") {
  TrainingUtterance u;
  u.features = Matrix(5, 1);
  const double v[] = {1, 4, 2, 8, 5};
  for (int t = 0; t < 5; ++t) u.features(t, 0) = v[t];
  u.phones = {"a"};
  PhoneModels models;
  models["a"].states.push_back({Gaussian{{0.0}, {1.0}}, 0.0});
  models["a"].self_loop.push_back(0.5);
  models["a"].durations.push_back({1.0, 1.0});
  std::vector<double> floor = {1e-6};
  ReestimateOptions opt;
  opt.iterations = 1;
  auto m = EmbeddedReestimate(models, {u}, UtteranceChunks({u}), floor, opt);
  CHECK(m.at("a").states[0].pdf.mean[0] == doctest::Approx(4.0));
  // 4 self-loops, one exit
  CHECK(m.at("a").self_loop[0] == doctest::Approx(0.8));
}

TEST_CASE("chunk accumulators pool per-chunk brute-force posteriors") {
  std::mt19937 rng(23);
  PhoneModels models{{"a", RandomPhone(2, 2, rng)}};
  TrainingUtterance u;
  u.features = RandomFeatures(11, 2, rng);
  u.phones = {"a", "a"};
  std::vector<Chunk> chunks = {{0, 0, 5, 0, 1}, {0, 5, 11, 1, 1}};
  std::vector<double> floor = {1e-9, 1e-9};

  std::vector<GaussianStats> expect(2, GaussianStats(2));
  std::vector<double> stay(2, 0.0), move(2, 0.0);
  for (const auto &c : chunks) {
    Matrix x(c.end_frame - c.start_frame, 2);
    for (std::size_t t = 0; t < x.rows(); ++t)
      for (std::size_t d = 0; d < 2; ++d) x(t, d) = u.features(c.start_frame + t, d);
    std::vector<std::string> one = {"a"};
    auto bf = Enumerate(BuildChain(models, one), x);
    for (std::size_t s = 0; s < 2; ++s) {
      for (std::size_t t = 0; t < x.rows(); ++t) expect[s].Add(x.row(t), bf.occupancy(t, s));
      stay[s] += bf.stay[s];
      move[s] += bf.move[s];
    }
  }
  ReestimateOptions opt;
  opt.iterations = 1;
  auto m = EmbeddedReestimate(models, {u}, chunks, floor, opt);
  for (std::size_t s = 0; s < 2; ++s) {
    auto g = expect[s].Estimate(floor);
    for (std::size_t d = 0; d < 2; ++d) {
      CHECK(m.at("a").states[s].pdf.mean[d] == doctest::Approx(g.mean[d]).epsilon(1e-10));
      CHECK(m.at("a").states[s].pdf.var[d] == doctest::Approx(g.var[d]).epsilon(1e-10));
    }
    CHECK(m.at("a").self_loop[s] == doctest::Approx(stay[s] / (stay[s] + move[s])));
  }
}

TEST_CASE("re-estimation never lowers the likelihood") {
  std::mt19937 rng(29);
  PhoneModels truth{{"a", RandomPhone(3, 4, rng)}, {"b", RandomPhone(3, 4, rng)},
                    {"c", RandomPhone(3, 4, rng)}};
  std::vector<TrainingUtterance> corpus;
  std::uniform_int_distribution<int> pick(0, 2), dur(2, 6);
  std::vector<Chunk> chunks;
  for (int u = 0; u < 12; ++u) {
    TrainingUtterance utt;
    utt.id = "u" + std::to_string(u);
    std::vector<std::size_t> sizes, bounds;
    for (int p = 0; p < 6; ++p) {
      const std::string ph(1, static_cast<char>('a' + pick(rng)));
      utt.phones.push_back(ph);
      const auto &hmm = truth.at(ph);
      for (const auto &st : hmm.states) {
        const int n = dur(rng);
        for (int k = 0; k < n; ++k) {
          std::vector<double> row(4);
          for (std::size_t d = 0; d < 4; ++d)
            row[d] = std::normal_distribution<double>(st.pdf.mean[d],
                                                      std::sqrt(st.pdf.var[d]))(rng);
          utt.features.AppendRow(row);
        }
      }
      if (p % 2 == 1) {
        sizes.push_back(2);
        if (p < 5) bounds.push_back(utt.features.rows());
      }
    }
    auto c = GroupChunks(corpus.size(), utt.features.rows(), sizes, bounds, 3);
    chunks.insert(chunks.end(), c.begin(), c.end());
    corpus.push_back(std::move(utt));
  }
  auto floor = VarianceFloor(corpus);
  auto models = FlatStartInit(corpus, 3, floor);
  ReestimateOptions opt;
  opt.iterations = 5;
  opt.workers = 3;
  ReestimateReport rep;
  auto m = EmbeddedReestimate(models, corpus, chunks, floor, opt, &rep);
  REQUIRE(rep.log_likelihood.size() == 6);
  for (std::size_t i = 1; i < rep.log_likelihood.size(); ++i)
    CHECK(rep.log_likelihood[i] >= rep.log_likelihood[i - 1] - 1e-6);
  for (const auto &[p, hmm] : m)
    for (double a : hmm.self_loop) CHECK((a > 0.0 && a < 1.0));

  opt.workers = 1;
  auto m1 = EmbeddedReestimate(models, corpus, chunks, floor, opt);
  CHECK(m1 == m);
}

TEST_CASE("group chunks merge infeasible groups") {
  std::vector<std::size_t> sizes = {1, 2, 1};
  std::vector<std::size_t> bounds = {10, 12};
  auto c = GroupChunks(0, 30, sizes, bounds, 3);
  REQUIRE(c.size() == 2);
  CHECK(c[0].start_frame == 0);
  CHECK(c[0].end_frame == 10);
  CHECK(c[1].start_frame == 10);
  CHECK(c[1].end_frame == 30);
  CHECK(c[1].first_phone == 1);
  CHECK(c[1].num_phones == 3);
}

TEST_CASE("clustering identical contexts keeps a single leaf") {
  auto phones = ToyPhones();
  auto qs = BuildQuestions(phones);
  std::mt19937 rng(2);
  std::normal_distribution<double> n(0, 1);
  std::vector<double> samples(400);
  for (double &v : samples) v = n(rng);
  std::vector<ContextStats> ctx;
  for (const char *l : {"k", "m", "s", "i"}) {
    ContextStats c{Label("x", l, "a", "k", "a"), GaussianStats(1)};
    for (double v : samples) c.stats.Add(std::vector<double>{v});
    ctx.push_back(c);
  }
  std::vector<double> floor = {1e-4};
  auto r = ClusterStates("a", 0, ctx, qs, phones, floor, ClusterOptions{});
  CHECK(r.tree.nodes.size() == 1);
  CHECK(r.leaves.size() == 1);
  CHECK(r.leaves[0].occupancy == 1600.0);
}

TEST_CASE("clustering splits two separated groups on a separating question") {
  auto phones = ToyPhones();
  auto qs = BuildQuestions(phones);
  std::mt19937 rng(4);
  std::normal_distribution<double> n(0, 1);
  std::vector<ContextStats> ctx;
  std::vector<double> left_nasal, left_stop;
  for (const char *l : {"k", "m"}) {
    ContextStats c{Label("x", l, "a", "s", "i"), GaussianStats(1)};
    for (int k = 0; k < 200; ++k) {
      const double v = (l[0] == 'm' ? 10.0 : -10.0) + n(rng);
      c.stats.Add(std::vector<double>{v});
      (l[0] == 'm' ? left_nasal : left_stop).push_back(v);
    }
    ctx.push_back(c);
  }
  std::vector<double> floor = {1e-4};
  auto r = ClusterStates("a", 2, ctx, qs, phones, floor, ClusterOptions{});
  REQUIRE(r.tree.nodes.size() == 3);
  const auto &q = qs[static_cast<std::size_t>(r.tree.nodes[0].question)];
  CHECK(q.Ask(ctx[0].label, phones) != q.Ask(ctx[1].label, phones));

  auto loglik = [](const std::vector<double> &v) {
    double m = 0, s = 0;
    for (double x : v) m += x;
    m /= v.size();
    for (double x : v) s += (x - m) * (x - m);
    s /= v.size();
    return -0.5 * v.size() * (std::log(2 * std::numbers::pi * s) + 1.0);
  };
  std::vector<double> all = left_nasal;
  all.insert(all.end(), left_stop.begin(), left_stop.end());
  const double gain = loglik(left_nasal) + loglik(left_stop) - loglik(all);
  CHECK(r.split_gains[0] == doctest::Approx(gain).epsilon(1e-9));
  CHECK(r.tree.Route(ctx[0].label, qs, phones) != r.tree.Route(ctx[1].label, qs, phones));
}

TEST_CASE("clustering respects minimum occupancy") {
  auto phones = ToyPhones();
  auto qs = BuildQuestions(phones);
  std::vector<ContextStats> ctx;
  for (const char *l : {"k", "m"}) {
    ContextStats c{Label("x", l, "a", "s", "i"), GaussianStats(1)};
    for (int k = 0; k < 30; ++k)
      c.stats.Add(std::vector<double>{(l[0] == 'm' ? 10.0 : -10.0) + 0.1 * k});
    ctx.push_back(c);
  }
  std::vector<double> floor = {1e-4};
  auto r = ClusterStates("a", 0, ctx, qs, phones, floor, ClusterOptions{});
  CHECK(r.tree.nodes.size() == 1);
  ClusterOptions loose;
  loose.min_occupancy = 10;
  r = ClusterStates("a", 0, ctx, qs, phones, floor, loose);
  CHECK(r.tree.nodes.size() == 3);
  CHECK_THROWS_AS(ClusterStates("a", 0, {}, qs, phones, floor, loose), Error);
}

TEST_CASE("every random context routes to a leaf") {
  auto phones = ToyPhones();
  auto qs = BuildQuestions(phones);
  std::mt19937 rng(6);
  const std::vector<std::string> pool = {"a", "i", "k", "m", "s", "sil", "x", "zz"};
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> pos(0, 2);
  std::normal_distribution<double> n(0, 1);
  auto random_label = [&] {
    return Label(pool[pick(rng)], pool[pick(rng)], "a", pool[pick(rng)],
                 pool[pick(rng)], static_cast<text::SyllablePosition>(pos(rng)));
  };
  std::vector<ContextStats> ctx;
  for (int i = 0; i < 60; ++i) {
    ContextStats c{random_label(), GaussianStats(2)};
    const double shift = phones.FindClass(c.label.l) == text::PhoneClass::kVowel ? 3.0 : 0.0;
    for (int k = 0; k < 40; ++k) c.stats.Add(std::vector<double>{n(rng) + shift, n(rng)});
    ctx.push_back(c);
  }
  std::vector<double> floor = {1e-4, 1e-4};
  ClusterOptions opt;
  opt.mdl_factor = 0.0;
  auto r = ClusterStates("a", 1, ctx, qs, phones, floor, opt);
  CHECK(r.tree.NumLeaves() >= 2);
  CHECK(r.tree.NumLeaves() == r.leaves.size());
  for (const auto &leaf : r.leaves) CHECK(leaf.occupancy >= opt.min_occupancy);
  for (int i = 0; i < 10000; ++i) {
    auto lab = random_label();
    const int leaf = r.tree.Route(lab, qs, phones);
    CHECK((leaf >= 0 && static_cast<std::size_t>(leaf) < r.leaves.size()));
    CHECK(r.tree.Route(lab, qs, phones) == leaf);
  }
}

namespace {

// Dense W (3T x T) for one dimension, built by running DeltaFeatures on
// unit vectors.
Eigen::MatrixXd DenseWindowMatrix(std::size_t T, int hw) {
  Eigen::MatrixXd W(3 * T, T);
  for (std::size_t j = 0; j < T; ++j) {
    Matrix e(T, 1, 0.0);
    e(j, 0) = 1.0;
    auto f = signal::DeltaFeatures(e, hw);
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t s = 0; s < 3; ++s) W(static_cast<Eigen::Index>(s * T + t),
                                            static_cast<Eigen::Index>(j)) = f(t, s);
  }
  return W;
}

}  // namespace

TEST_CASE("MLPG matches a dense solve") {
  std::mt19937 rng(13);
  std::normal_distribution<double> n(0, 1);
  std::uniform_real_distribution<double> p(0.2, 5.0);
  for (int hw : {1, 2}) {
    for (std::size_t T : {5u, 12u, 31u}) {
      const std::size_t D = 2;
      Matrix mean(T, 3 * D), prec(T, 3 * D);
      // Two states of a toy sequence: constant parameters per half.
      std::vector<double> m0(3 * D), m1(3 * D), p0(3 * D), p1(3 * D);
      for (std::size_t k = 0; k < 3 * D; ++k) {
        m0[k] = n(rng);
        m1[k] = n(rng);
        p0[k] = p(rng);
        p1[k] = p(rng);
      }
      for (std::size_t t = 0; t < T; ++t)
        for (std::size_t k = 0; k < 3 * D; ++k) {
          mean(t, k) = t < T / 2 ? m0[k] : m1[k];
          prec(t, k) = t < T / 2 ? p0[k] : p1[k];
        }
      auto c = MlpgSolve(mean, prec, hw);
      const auto W = DenseWindowMatrix(T, hw);
      for (std::size_t d = 0; d < D; ++d) {
        Eigen::VectorXd mu(3 * T), P(3 * T);
        for (std::size_t s = 0; s < 3; ++s)
          for (std::size_t t = 0; t < T; ++t) {
            mu(static_cast<Eigen::Index>(s * T + t)) = mean(t, s * D + d);
            P(static_cast<Eigen::Index>(s * T + t)) = prec(t, s * D + d);
          }
        Eigen::MatrixXd A = W.transpose() * P.asDiagonal() * W;
        Eigen::VectorXd b = W.transpose() * P.asDiagonal() * mu;
        Eigen::VectorXd ref = A.ldlt().solve(b);
        for (std::size_t t = 0; t < T; ++t)
          CHECK(std::abs(c(t, d) - ref(static_cast<Eigen::Index>(t))) <= 1e-8);
      }
    }
  }
}

TEST_CASE("MLPG with no delta weight returns the static means") {
  std::mt19937 rng(17);
  std::normal_distribution<double> n(0, 1);
  const std::size_t T = 20, D = 3;
  Matrix mean(T, 3 * D), prec(T, 3 * D, 0.0);
  for (double &v : mean.data()) v = n(rng);
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t d = 0; d < D; ++d) prec(t, d) = 1.0 + t % 3;
  auto c = MlpgSolve(mean, prec, 2);
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t d = 0; d < D; ++d) CHECK(c(t, d) == mean(t, d));

  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t d = D; d < 3 * D; ++d) prec(t, d) = 1e-14;
  c = MlpgSolve(mean, prec, 2);
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t d = 0; d < D; ++d) CHECK(std::abs(c(t, d) - mean(t, d)) <= 1e-12);
}

namespace {

// One phone "a" with a single state whose tree is a single leaf.
AcousticModel TinyModel(int states, std::size_t static_dim) {
  AcousticModel m;
  m.static_dim = static_cast<int>(static_dim);
  m.num_states = states;
  m.num_filters = static_cast<int>(static_dim);
  m.log_floor = -23.0;
  m.phone_set = ToyPhones();
  m.var_floor.assign(3 * static_dim, 1e-4);
  m.questions = BuildQuestions(m.phone_set);
  for (int s = 0; s < states; ++s) {
    DecisionTree t;
    t.phone = "a";
    t.state = s;
    t.nodes.push_back({-1, -1, -1, s});
    m.trees.push_back(t);
    Gaussian g;
    for (std::size_t d = 0; d < 3 * static_dim; ++d) {
      g.mean.push_back(d < static_dim ? 1.0 + s + 0.5 * d : 0.0);
      g.var.push_back(0.5);
    }
    m.leaf_pdfs.push_back(g);
    m.leaf_durations.push_back({3.0, 1.0});
    m.leaf_occupancy.push_back(100.0);
  }
  PhoneHmm mono;
  for (int s = 0; s < states; ++s) {
    mono.states.push_back({m.leaf_pdfs[static_cast<std::size_t>(s)], 100.0});
    mono.self_loop.push_back(0.6);
    mono.durations.push_back({3.0, 1.0});
  }
  m.monophones["a"] = mono;
  return m;
}

}  // namespace

TEST_CASE("generation without smoothing repeats state means") {
  auto m = TinyModel(1, 4);
  std::vector<text::ContextLabel> labels = {Label("x", "x", "a", "x", "x")};
  GenerationOptions opt;
  opt.smoothing = Smoothing::kNone;
  auto mel = GenerateParameters(labels, m, opt);
  REQUIRE(mel.frames.rows() == 3);
  for (std::size_t t = 0; t < 3; ++t)
    for (std::size_t d = 0; d < 4; ++d) CHECK(mel.frames(t, d) == m.leaf_pdfs[0].mean[d]);

  opt.speaking_rate = 2.0;
  CHECK(GenerateParameters(labels, m, opt).frames.rows() == 6);
  opt.speaking_rate = 0.01;
  CHECK(GenerateParameters(labels, m, opt).frames.rows() == 1);
  opt.speaking_rate = 0.0;
  CHECK_THROWS_AS(GenerateParameters(labels, m, opt), Error);

  std::vector<text::ContextLabel> unknown = {Label("x", "x", "k", "x", "x")};
  CHECK_THROWS_AS(GenerateParameters(unknown, m, GenerationOptions{}), Error);
}

TEST_CASE("generation is deterministic and MLPG smooths state jumps") {
  auto m = TinyModel(3, 2);
  std::vector<text::ContextLabel> labels = {Label("x", "x", "a", "a", "x"),
                                            Label("x", "a", "a", "x", "x")};
  auto a = GenerateParameters(labels, m, GenerationOptions{});
  auto b = GenerateParameters(labels, m, GenerationOptions{});
  CHECK(a.frames == b.frames);
  REQUIRE(a.frames.rows() == 18);
  // Delta means are zero, so the trajectory is pulled towards flatness but
  // stays between the extreme state means.
  for (std::size_t t = 0; t < 18; ++t) {
    CHECK(a.frames(t, 0) >= 1.0 - 1e-9);
    CHECK(a.frames(t, 0) <= 3.0 + 1e-9);
  }
  CHECK(a.frames(2, 0) > 1.0);
  CHECK(a.num_filters == 2);
}

TEST_CASE("model serialization round-trips and rejects corruption") {
  auto m = TinyModel(2, 3);
  auto bytes = SerializeModel(m);
  auto back = DeserializeModel(bytes);
  CHECK(back.monophones == m.monophones);
  CHECK(back.trees == m.trees);
  CHECK(back.leaf_pdfs == m.leaf_pdfs);
  CHECK(back.questions == m.questions);
  CHECK(back.phone_set.Ids() == m.phone_set.Ids());
  CHECK(SerializeModel(back) == bytes);

  auto bad = bytes;
  bad[0] = 'X';
  CHECK_THROWS_WITH_AS(DeserializeModel(bad), doctest::Contains("magic"), Error);
  auto cut = bytes;
  cut.resize(bytes.size() - 5);
  CHECK_THROWS_WITH_AS(DeserializeModel(cut), doctest::Contains("byte offset"), Error);
  auto extra = bytes;
  extra.push_back(0);
  CHECK_THROWS_AS(DeserializeModel(extra), Error);
}
