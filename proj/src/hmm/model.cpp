// src/hmm/model.cpp

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

#include "hmm/model.hpp"

#include <cmath>

#include "common/binio.hpp"
#include "common/error.hpp"
#include "common/fileio.hpp"

namespace melhts::hmm {

namespace {

constexpr char kMagic[4] = {'M', 'H', 'M', 'M'};

void PutGaussian(ByteWriter &w, const Gaussian &g) {
  for (double v : g.mean) w.Put<double>(v);
  for (double v : g.var) w.Put<double>(v);
}

Gaussian GetGaussian(ByteReader &r, std::size_t dim) {
  Gaussian g;
  g.mean.resize(dim);
  g.var.resize(dim);
  for (double &v : g.mean) {
    v = r.Get<double>();
    if (!std::isfinite(v)) r.Corrupt("non-finite mean");
  }
  for (double &v : g.var) {
    v = r.Get<double>();
    if (!(v > 0.0) || !std::isfinite(v)) r.Corrupt("non-positive variance");
  }
  return g;
}

std::uint32_t Count(ByteReader &r, std::size_t limit, const char *what) {
  auto n = r.Get<std::uint32_t>();
  if (n > limit) r.Corrupt(std::string("implausible ") + what + " count " +
                           std::to_string(n));
  return n;
}

}  // namespace

void CheckPhoneModels(const PhoneModels &models) {
  for (const auto &[phone, hmm] : models) {
    Require(!hmm.states.empty() && hmm.self_loop.size() == hmm.states.size() &&
                hmm.durations.size() == hmm.states.size(),
            ErrorKind::kInternal, "phone model " + phone + " is inconsistent");
    for (double a : hmm.self_loop)
      Require(a > 0.0 && a < 1.0, ErrorKind::kInternal,
              "phone model " + phone + " has a self-loop outside (0, 1)");
    for (const auto &d : hmm.durations)
      Require(d.mean > 0.0, ErrorKind::kInternal,
              "phone model " + phone + " has a non-positive duration mean");
  }
}

const DecisionTree *AcousticModel::FindTree(const std::string &phone,
                                            int state) const {
  for (const auto &t : trees)
    if (t.phone == phone && t.state == state) return &t;
  return nullptr;
}

std::vector<unsigned char> SerializeModel(const AcousticModel &m) {
  const auto dim = static_cast<std::size_t>(m.feature_dim());
  ByteWriter w;
  w.PutBytes(kMagic, 4);
  w.Put<std::uint32_t>(kModelVersion);
  w.Put<std::int32_t>(m.static_dim);
  w.Put<std::int32_t>(m.delta_window);
  w.Put<std::int32_t>(m.num_states);
  w.Put<double>(m.frame_shift_ms);
  w.Put<std::int32_t>(m.sample_rate_hz);
  w.Put<std::int32_t>(m.num_filters);
  w.Put<double>(m.log_floor);

  const auto ids = m.phone_set.Ids();
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(ids.size()));
  for (const auto &id : ids) {
    w.PutString(id);
    w.Put<std::uint8_t>(static_cast<std::uint8_t>(m.phone_set.ClassOf(id)));
  }

  Require(m.var_floor.size() == dim, ErrorKind::kInternal,
          "variance floor does not match the feature dimension");
  for (double v : m.var_floor) w.Put<double>(v);

  w.Put<std::uint32_t>(static_cast<std::uint32_t>(m.monophones.size()));
  for (const auto &[phone, hmm] : m.monophones) {
    w.PutString(phone);
    w.Put<std::uint32_t>(static_cast<std::uint32_t>(hmm.states.size()));
    for (std::size_t s = 0; s < hmm.states.size(); ++s) {
      PutGaussian(w, hmm.states[s].pdf);
      w.Put<double>(hmm.states[s].occupancy);
      w.Put<double>(hmm.self_loop[s]);
      w.Put<double>(hmm.durations[s].mean);
      w.Put<double>(hmm.durations[s].var);
    }
  }

  w.Put<std::uint32_t>(static_cast<std::uint32_t>(m.questions.size()));
  for (const auto &q : m.questions) {
    w.Put<std::uint8_t>(static_cast<std::uint8_t>(q.kind));
    w.Put<std::uint8_t>(static_cast<std::uint8_t>(q.slot));
    w.PutString(q.phone);
    w.Put<std::uint8_t>(static_cast<std::uint8_t>(q.phone_class));
    w.Put<std::uint8_t>(static_cast<std::uint8_t>(q.position));
  }

  w.Put<std::uint32_t>(static_cast<std::uint32_t>(m.trees.size()));
  for (const auto &t : m.trees) {
    w.PutString(t.phone);
    w.Put<std::int32_t>(t.state);
    w.Put<std::uint32_t>(static_cast<std::uint32_t>(t.nodes.size()));
    for (const auto &n : t.nodes) {
      w.Put<std::int32_t>(n.question);
      w.Put<std::int32_t>(n.yes);
      w.Put<std::int32_t>(n.no);
      w.Put<std::int32_t>(n.leaf);
    }
  }

  Require(m.leaf_durations.size() == m.leaf_pdfs.size() &&
              m.leaf_occupancy.size() == m.leaf_pdfs.size(),
          ErrorKind::kInternal, "leaf tables have different sizes");
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(m.leaf_pdfs.size()));
  for (std::size_t i = 0; i < m.leaf_pdfs.size(); ++i) {
    PutGaussian(w, m.leaf_pdfs[i]);
    w.Put<double>(m.leaf_durations[i].mean);
    w.Put<double>(m.leaf_durations[i].var);
    w.Put<double>(m.leaf_occupancy[i]);
  }
  return w.Release();
}

AcousticModel DeserializeModel(const std::vector<unsigned char> &bytes,
                               const std::string &what) {
  ByteReader r(bytes.data(), bytes.size(), what);
  char magic[4];
  r.GetBytes(magic, 4);
  if (std::string(magic, 4) != std::string(kMagic, 4))
    r.Corrupt("bad magic (not a melhts model)");
  const auto version = r.Get<std::uint32_t>();
  if (version != kModelVersion)
    r.Corrupt("unsupported model version " + std::to_string(version));

  AcousticModel m;
  m.static_dim = r.Get<std::int32_t>();
  m.delta_window = r.Get<std::int32_t>();
  m.num_states = r.Get<std::int32_t>();
  m.frame_shift_ms = r.Get<double>();
  m.sample_rate_hz = r.Get<std::int32_t>();
  m.num_filters = r.Get<std::int32_t>();
  m.log_floor = r.Get<double>();
  if (m.static_dim <= 0 || m.static_dim > 4096) r.Corrupt("bad feature dimension");
  if (m.delta_window < 1 || m.num_states < 1 || m.num_states > 64)
    r.Corrupt("bad model topology");
  if (!(m.frame_shift_ms > 0.0) || m.sample_rate_hz <= 0)
    r.Corrupt("bad frame geometry");
  const auto dim = static_cast<std::size_t>(m.feature_dim());

  const auto num_phones = Count(r, 1u << 16, "phone");
  for (std::uint32_t i = 0; i < num_phones; ++i) {
    auto id = r.GetString();
    auto cls = r.Get<std::uint8_t>();
    if (cls >= text::kNumPhoneClasses) r.Corrupt("bad phone class");
    m.phone_set.Add(id, text::ClassFromIndex(cls));
  }

  m.var_floor.resize(dim);
  for (double &v : m.var_floor) {
    v = r.Get<double>();
    if (!(v > 0.0)) r.Corrupt("non-positive variance floor");
  }

  const auto num_mono = Count(r, 1u << 16, "monophone");
  for (std::uint32_t i = 0; i < num_mono; ++i) {
    auto phone = r.GetString();
    const auto states = r.Get<std::uint32_t>();
    if (states != static_cast<std::uint32_t>(m.num_states))
      r.Corrupt("monophone " + phone + " has the wrong state count");
    PhoneHmm hmm;
    for (std::uint32_t s = 0; s < states; ++s) {
      HmmState st;
      st.pdf = GetGaussian(r, dim);
      st.occupancy = r.Get<double>();
      hmm.states.push_back(std::move(st));
      const double a = r.Get<double>();
      if (!(a > 0.0 && a < 1.0)) r.Corrupt("self-loop outside (0, 1)");
      hmm.self_loop.push_back(a);
      DurationModel d{r.Get<double>(), r.Get<double>()};
      hmm.durations.push_back(d);
    }
    m.monophones.emplace(std::move(phone), std::move(hmm));
  }

  const auto num_q = Count(r, 1u << 20, "question");
  for (std::uint32_t i = 0; i < num_q; ++i) {
    Question q;
    const auto kind = r.Get<std::uint8_t>();
    const auto slot = r.Get<std::uint8_t>();
    if (kind > 2 || slot > 3) r.Corrupt("bad question");
    q.kind = static_cast<Question::Kind>(kind);
    q.slot = static_cast<ContextSlot>(slot);
    q.phone = r.GetString();
    const auto cls = r.Get<std::uint8_t>();
    const auto pos = r.Get<std::uint8_t>();
    if (cls >= text::kNumPhoneClasses || pos > 2) r.Corrupt("bad question");
    q.phone_class = text::ClassFromIndex(cls);
    q.position = static_cast<text::SyllablePosition>(pos);
    m.questions.push_back(std::move(q));
  }

  const auto num_trees = Count(r, 1u << 20, "tree");
  std::vector<int> leaf_refs;
  for (std::uint32_t i = 0; i < num_trees; ++i) {
    DecisionTree t;
    t.phone = r.GetString();
    t.state = r.Get<std::int32_t>();
    const auto num_nodes = Count(r, 1u << 24, "tree node");
    if (num_nodes == 0) r.Corrupt("empty tree");
    for (std::uint32_t k = 0; k < num_nodes; ++k) {
      TreeNode n;
      n.question = r.Get<std::int32_t>();
      n.yes = r.Get<std::int32_t>();
      n.no = r.Get<std::int32_t>();
      n.leaf = r.Get<std::int32_t>();
      if (n.question >= 0) {
        // Children always follow their parent, which rules out cycles.
        if (static_cast<std::uint32_t>(n.question) >= num_q ||
            n.yes <= static_cast<int>(k) || n.no <= static_cast<int>(k) ||
            static_cast<std::uint32_t>(n.yes) >= num_nodes ||
            static_cast<std::uint32_t>(n.no) >= num_nodes)
          r.Corrupt("bad tree node");
      } else {
        leaf_refs.push_back(n.leaf);
      }
      t.nodes.push_back(n);
    }
    m.trees.push_back(std::move(t));
  }

  const auto num_leaves = Count(r, 1u << 24, "leaf");
  for (int leaf : leaf_refs)
    if (leaf < 0 || static_cast<std::uint32_t>(leaf) >= num_leaves)
      r.Corrupt("tree leaf index out of range");
  for (std::uint32_t i = 0; i < num_leaves; ++i) {
    m.leaf_pdfs.push_back(GetGaussian(r, dim));
    DurationModel d{r.Get<double>(), r.Get<double>()};
    if (!(d.mean > 0.0) || !(d.var > 0.0)) r.Corrupt("bad duration model");
    m.leaf_durations.push_back(d);
    m.leaf_occupancy.push_back(r.Get<double>());
  }
  if (r.remaining() != 0) r.Corrupt("trailing bytes after model");
  return m;
}

void SaveModel(const std::filesystem::path &path, const AcousticModel &model) {
  const auto bytes = SerializeModel(model);
  WriteFileAtomic(path, bytes.data(), bytes.size());
}

AcousticModel LoadModel(const std::filesystem::path &path) {
  return DeserializeModel(ReadFileBytes(path), path.string());
}

}  // namespace melhts::hmm
