// src/hmm/train.cpp

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

#include "hmm/train.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "common/error.hpp"
#include "common/parallel.hpp"

namespace melhts::hmm {

namespace {

// Chunks are accumulated in fixed-size blocks that are merged in order, so
// the result does not depend on the number of workers.
constexpr std::size_t kBlockSize = 16;

struct PhoneAccumulator {
  std::vector<GaussianStats> states;
  std::vector<double> stay;
  std::vector<double> move;
};

struct Accumulators {
  std::map<std::string, PhoneAccumulator> phones;
  double log_likelihood = 0.0;

  PhoneAccumulator &For(const std::string &phone, std::size_t num_states,
                        std::size_t dim) {
    auto &acc = phones[phone];
    if (acc.states.empty()) {
      acc.states.assign(num_states, GaussianStats(dim));
      acc.stay.assign(num_states, 0.0);
      acc.move.assign(num_states, 0.0);
    }
    return acc;
  }

  void Merge(const Accumulators &other) {
    log_likelihood += other.log_likelihood;
    for (const auto &[phone, acc] : other.phones) {
      auto &mine = For(phone, acc.states.size(), acc.states[0].sum.size());
      for (std::size_t s = 0; s < acc.states.size(); ++s) {
        mine.states[s].Merge(acc.states[s]);
        mine.stay[s] += acc.stay[s];
        mine.move[s] += acc.move[s];
      }
    }
  }
};

bool Feasible(const Chunk &c, int num_states) {
  return c.num_phones > 0 &&
         c.end_frame - c.start_frame >=
             c.num_phones * static_cast<std::size_t>(num_states);
}

Matrix Slice(const Matrix &m, std::size_t begin, std::size_t end) {
  Matrix out(end - begin, m.cols());
  std::copy(m.data().begin() + static_cast<std::ptrdiff_t>(begin * m.cols()),
            m.data().begin() + static_cast<std::ptrdiff_t>(end * m.cols()),
            out.data().begin());
  return out;
}

Accumulators EStep(const PhoneModels &models,
                   const std::vector<TrainingUtterance> &corpus,
                   const std::vector<Chunk> &chunks, int workers) {
  const std::size_t num_blocks = (chunks.size() + kBlockSize - 1) / kBlockSize;
  std::vector<Accumulators> blocks(num_blocks);
  ParallelFor(num_blocks, workers, [&](std::size_t b) {
    auto &acc = blocks[b];
    const std::size_t end = std::min(chunks.size(), (b + 1) * kBlockSize);
    for (std::size_t c = b * kBlockSize; c < end; ++c) {
      const auto &chunk = chunks[c];
      const auto &utt = corpus[chunk.utterance];
      std::span<const std::string> phones(
          utt.phones.data() + chunk.first_phone, chunk.num_phones);
      const auto chain = BuildChain(models, phones);
      const Matrix x = Slice(utt.features, chunk.start_frame, chunk.end_frame);
      const auto post = ForwardBackward(chain, x);
      acc.log_likelihood += post.log_likelihood;
      for (std::size_t j = 0; j < chain.size(); ++j) {
        const auto &phone = phones[chain.phone_index[j]];
        auto &pa = acc.For(phone, models.at(phone).num_states(), x.cols());
        const auto s = static_cast<std::size_t>(chain.state_index[j]);
        for (std::size_t t = 0; t < x.rows(); ++t) {
          const double g = post.occupancy(t, j);
          if (g > 0.0) pa.states[s].Add(x.row(t), g);
        }
        pa.stay[s] += post.stay[j];
        pa.move[s] += post.move[j];
      }
    }
  });
  Accumulators total;
  for (const auto &b : blocks) total.Merge(b);
  return total;
}

void MStep(const Accumulators &acc, std::span<const double> var_floor,
           double min_self_loop, PhoneModels *models) {
  for (auto &[phone, hmm] : *models) {
    auto it = acc.phones.find(phone);
    if (it == acc.phones.end()) continue;
    const auto &pa = it->second;
    for (std::size_t s = 0; s < hmm.states.size(); ++s) {
      const auto &st = pa.states[s];
      if (st.occupancy <= 0.0) continue;
      hmm.states[s].pdf = st.Estimate(var_floor);
      hmm.states[s].occupancy = st.occupancy;
      const double visits = pa.stay[s] + pa.move[s];
      if (visits > 0.0)
        hmm.self_loop[s] = std::clamp(pa.stay[s] / visits, min_self_loop,
                                      1.0 - min_self_loop);
      if (pa.move[s] > 0.0)
        hmm.durations[s].mean = std::max(1.0, st.occupancy / pa.move[s]);
    }
  }
}

}  // namespace

std::vector<double> VarianceFloor(const std::vector<TrainingUtterance> &corpus,
                                  double ratio) {
  GaussianStats all;
  for (const auto &u : corpus)
    for (std::size_t t = 0; t < u.features.rows(); ++t) all.Add(u.features.row(t));
  Require(all.occupancy > 0.0, ErrorKind::kData, "no training frames");
  auto v = all.Variance({});
  for (double &x : v) x = std::max(x * ratio, 1e-12);
  return v;
}

PhoneModels FlatStartInit(const std::vector<TrainingUtterance> &corpus,
                          int num_states, std::span<const double> var_floor,
                          FlatStartReport *report) {
  Require(num_states >= 1, ErrorKind::kParameter, "num_states must be >= 1");
  const auto S = static_cast<std::size_t>(num_states);
  std::map<std::string, std::vector<GaussianStats>> stats;
  std::map<std::string, std::vector<std::vector<double>>> lengths;
  std::size_t used = 0;
  for (const auto &u : corpus) {
    const std::size_t T = u.features.rows();
    const std::size_t K = u.phones.size();
    if (K == 0 || T < S * K) {
      if (report) report->skipped.push_back(u.id);
      continue;
    }
    ++used;
    for (std::size_t k = 0; k < K; ++k) {
      const std::size_t p0 = k * T / K;
      const std::size_t p1 = (k + 1) * T / K;
      auto &st = stats[u.phones[k]];
      auto &len = lengths[u.phones[k]];
      if (st.empty()) {
        st.assign(S, GaussianStats(u.features.cols()));
        len.assign(S, {});
      }
      for (std::size_t s = 0; s < S; ++s) {
        const std::size_t s0 = p0 + s * (p1 - p0) / S;
        const std::size_t s1 = p0 + (s + 1) * (p1 - p0) / S;
        for (std::size_t t = s0; t < s1; ++t) st[s].Add(u.features.row(t));
        len[s].push_back(static_cast<double>(s1 - s0));
      }
    }
  }
  Require(used > 0, ErrorKind::kData,
          "flat start: every utterance has fewer than " + std::to_string(S) +
              " frames per phone");

  PhoneModels models;
  for (const auto &[phone, st] : stats) {
    PhoneHmm hmm;
    for (std::size_t s = 0; s < S; ++s) {
      hmm.states.push_back({st[s].Estimate(var_floor), st[s].occupancy});
      hmm.self_loop.push_back(0.5);
      hmm.durations.push_back(EstimateDuration(lengths.at(phone)[s]));
    }
    models.emplace(phone, std::move(hmm));
  }
  return models;
}

std::vector<Chunk> UtteranceChunks(const std::vector<TrainingUtterance> &corpus) {
  std::vector<Chunk> chunks;
  for (std::size_t u = 0; u < corpus.size(); ++u)
    chunks.push_back({u, 0, corpus[u].features.rows(), 0, corpus[u].phones.size()});
  return chunks;
}

std::vector<Chunk> GroupChunks(std::size_t utterance, std::size_t num_frames,
                               std::span<const std::size_t> group_sizes,
                               std::span<const std::size_t> boundary_frames,
                               int num_states) {
  Require(boundary_frames.size() + 1 == group_sizes.size(),
          ErrorKind::kParameter,
          "need one boundary between each pair of phone groups");
  std::vector<Chunk> raw;
  std::size_t phone = 0;
  for (std::size_t g = 0; g < group_sizes.size(); ++g) {
    Chunk c;
    c.utterance = utterance;
    c.start_frame = g == 0 ? 0 : boundary_frames[g - 1];
    c.end_frame = g + 1 < group_sizes.size() ? boundary_frames[g] : num_frames;
    c.start_frame = std::min(c.start_frame, num_frames);
    c.end_frame = std::clamp(c.end_frame, c.start_frame, num_frames);
    c.first_phone = phone;
    c.num_phones = group_sizes[g];
    phone += group_sizes[g];
    raw.push_back(c);
  }

  std::vector<Chunk> out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    Chunk c = raw[i];
    while (!Feasible(c, num_states) && i + 1 < raw.size()) {
      ++i;
      c.end_frame = raw[i].end_frame;
      c.num_phones += raw[i].num_phones;
    }
    if (!Feasible(c, num_states) && !out.empty()) {
      out.back().end_frame = c.end_frame;
      out.back().num_phones += c.num_phones;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

PhoneModels EmbeddedReestimate(PhoneModels models,
                               const std::vector<TrainingUtterance> &corpus,
                               const std::vector<Chunk> &chunks,
                               std::span<const double> var_floor,
                               const ReestimateOptions &options,
                               ReestimateReport *report) {
  Require(options.iterations >= 0, ErrorKind::kParameter,
          "iterations must be >= 0");
  int num_states = 0;
  for (const auto &[phone, hmm] : models)
    num_states = static_cast<int>(hmm.num_states());
  std::vector<Chunk> usable;
  for (const auto &c : chunks) {
    if (Feasible(c, num_states)) usable.push_back(c);
  }
  Require(!usable.empty(), ErrorKind::kData,
          "no chunk has enough frames for its phones");
  if (report) {
    report->chunks_used = usable.size();
    report->chunks_skipped = chunks.size() - usable.size();
    report->log_likelihood.clear();
  }
  for (int it = 0; it <= options.iterations; ++it) {
    auto acc = EStep(models, corpus, usable, options.workers);
    if (report) report->log_likelihood.push_back(acc.log_likelihood);
    if (it == options.iterations) break;
    MStep(acc, var_floor, options.min_self_loop, &models);
  }
  CheckPhoneModels(models);
  return models;
}

DurationModel EstimateDuration(std::span<const double> frames,
                               double var_floor) {
  Require(!frames.empty(), ErrorKind::kData,
          "duration model needs at least one occurrence");
  double mean = 0.0;
  for (double f : frames) mean += f;
  mean /= static_cast<double>(frames.size());
  double var = 0.0;
  for (double f : frames) var += (f - mean) * (f - mean);
  var /= static_cast<double>(frames.size());
  return {mean, std::max(var, var_floor)};
}

void TieStates(const std::vector<TrainingUtterance> &corpus,
               const std::vector<AlignmentResult> &alignments,
               const std::vector<std::vector<text::ContextLabel>> &labels,
               const TyingOptions &options, AcousticModel *model) {
  Require(alignments.size() == corpus.size() && labels.size() == corpus.size(),
          ErrorKind::kParameter,
          "need one alignment and label sequence per utterance");

  struct Occurrence {
    text::ContextLabel label;
    double frames;
  };
  std::map<std::pair<std::string, int>, std::vector<ContextStats>> stats;
  std::map<std::pair<std::string, int>, std::vector<Occurrence>> occurrences;
  for (std::size_t u = 0; u < corpus.size(); ++u) {
    const auto &al = alignments[u];
    Require(al.phones.size() == labels[u].size(), ErrorKind::kInternal,
            "labels and alignment of " + corpus[u].id + " disagree");
    for (std::size_t p = 0; p < al.phones.size(); ++p) {
      const auto &seg = al.phones[p];
      std::size_t start = seg.start_frame;
      for (std::size_t s = 0; s < seg.state_ends.size(); ++s) {
        const std::size_t end = seg.state_ends[s];
        ContextStats cs{labels[u][p], GaussianStats(corpus[u].features.cols())};
        for (std::size_t t = start; t < end; ++t)
          cs.stats.Add(corpus[u].features.row(t));
        const std::pair<std::string, int> key{seg.phone, static_cast<int>(s)};
        stats[key].push_back(std::move(cs));
        occurrences[key].push_back(
            {labels[u][p], static_cast<double>(end - start)});
        start = end;
      }
    }
  }
  Require(!stats.empty(), ErrorKind::kData, "no aligned frames to cluster");

  model->questions = BuildQuestions(model->phone_set);
  std::vector<std::pair<std::string, int>> keys;
  for (const auto &[key, v] : stats) keys.push_back(key);
  std::vector<ClusterResult> results(keys.size());
  ParallelFor(keys.size(), options.workers, [&](std::size_t i) {
    results[i] = ClusterStates(keys[i].first, keys[i].second, stats.at(keys[i]),
                               model->questions, model->phone_set,
                               model->var_floor, options.cluster);
  });

  model->trees.clear();
  model->leaf_pdfs.clear();
  model->leaf_durations.clear();
  model->leaf_occupancy.clear();
  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto &r = results[i];
    const int offset = static_cast<int>(model->leaf_pdfs.size());
    for (auto &node : r.tree.nodes)
      if (node.question < 0) node.leaf += offset;
    std::vector<std::vector<double>> frames(r.leaves.size());
    for (const auto &occ : occurrences.at(keys[i])) {
      const int leaf =
          r.tree.Route(occ.label, model->questions, model->phone_set) - offset;
      frames[static_cast<std::size_t>(leaf)].push_back(occ.frames);
    }
    for (std::size_t l = 0; l < r.leaves.size(); ++l) {
      model->leaf_pdfs.push_back(r.leaves[l].Estimate(model->var_floor));
      model->leaf_occupancy.push_back(r.leaves[l].occupancy);
      model->leaf_durations.push_back(EstimateDuration(frames[l]));
    }
    model->trees.push_back(std::move(r.tree));
  }
}

}  // namespace melhts::hmm
