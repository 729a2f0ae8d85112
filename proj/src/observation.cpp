// Copyright 2026 The Tracepriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tracepriv/observation.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace tracepriv {

std::string to_string(RecordKind k) {
  switch (k) {
    case RecordKind::kMeetingCount: return "meeting-count";
    case RecordKind::kAtRiskBit: return "at-risk";
    case RecordKind::kCorruptedMeet: return "corrupted-meet";
    case RecordKind::kHeardToken: return "heard-token";
    case RecordKind::kServerEvent: return "server-event";
    case RecordKind::kServerUpload: return "server-upload";
    case RecordKind::kServerNotify: return "server-notify";
    case RecordKind::kAnonUpload: return "anon-upload";
    case RecordKind::kPublishedGroup: return "published-group";
    case RecordKind::kMatch: return "match";
    case RecordKind::kMatchCount: return "match-count";
  }
  return "?";
}

std::string to_string(Vantage v) {
  return v == Vantage::kCorruptedClients ? "clients" : "server";
}

namespace {

// Label-free shape of a record; the anchor for occurrence signatures and the
// primary sort key. Opaque slots contribute only their slot positions here.
std::string record_shape(const Record& r) {
  std::ostringstream os;
  os << r.batch << '|' << static_cast<int>(r.kind) << '|' << r.observer << '|';
  for (const auto& u : r.users) os << u << ',';
  os << '|';
  for (auto n : r.nums) os << n << ',';
  os << '|';
  for (const auto& slot : r.labels) os << (slot.transparent() ? slot.owner : "*") << ',';
  return os.str();
}

std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t hash_str(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Transcript canonicalize(const Observation& obs) {
  const auto& records = obs.records;
  const size_t n = records.size();

  // Occurrence signature per opaque label value: where it appears, refined
  // twice so that labels linked through shared records sort apart. The
  // signatures depend only on record structure, never on the drawn values.
  std::map<Label, std::uint64_t> sig;
  std::vector<std::string> shapes(n);
  for (size_t i = 0; i < n; ++i) shapes[i] = record_shape(records[i]);

  for (int round = 0; round < 2; ++round) {
    std::map<Label, std::vector<std::uint64_t>> occurrences;
    for (size_t i = 0; i < n; ++i) {
      const Record& r = records[i];
      for (size_t s = 0; s < r.labels.size(); ++s) {
        if (r.labels[s].transparent()) continue;
        std::uint64_t h = hash_str(shapes[i]);
        h = hash_mix(h, s);
        // Co-occurring labels in the same record, by current signature.
        for (size_t s2 = 0; s2 < r.labels.size(); ++s2) {
          if (s2 == s || r.labels[s2].transparent()) continue;
          auto it = sig.find(r.labels[s2].value);
          h = hash_mix(h, it == sig.end() ? 1 : it->second);
        }
        occurrences[r.labels[s].value].push_back(h);
      }
    }
    std::map<Label, std::uint64_t> next;
    for (auto& [label, hs] : occurrences) {
      std::sort(hs.begin(), hs.end());
      std::uint64_t h = 0x2545f4914f6cdd1dULL;
      for (std::uint64_t v : hs) h = hash_mix(h, v);
      next[label] = h;
    }
    sig = std::move(next);
  }

  // Stable structural order: by batch, then shape, then the labels' signatures.
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  auto sort_key = [&](size_t i) {
    std::vector<std::uint64_t> sigs;
    for (const auto& slot : records[i].labels) {
      sigs.push_back(slot.transparent() ? 0 : sig.at(slot.value));
    }
    return std::make_tuple(records[i].batch, shapes[i], sigs);
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return sort_key(a) < sort_key(b); });

  // First-appearance renaming along the sorted order.
  Transcript out;
  out.vantage = obs.vantage;
  std::map<Label, std::uint64_t> index;
  for (size_t i : order) {
    Record r = records[i];
    for (auto& slot : r.labels) {
      if (slot.transparent()) continue;
      auto [it, fresh] = index.emplace(slot.value, index.size());
      slot.value = Label{0, it->second};
    }
    out.records.push_back(std::move(r));
  }
  return out;
}

namespace {

std::string record_line(const Record& r) {
  std::ostringstream os;
  os << "b" << r.batch << ' ' << to_string(r.kind);
  if (!r.observer.empty()) os << " obs=" << r.observer;
  if (!r.users.empty()) {
    os << " users=";
    for (size_t i = 0; i < r.users.size(); ++i) os << (i ? "," : "") << r.users[i];
  }
  if (!r.nums.empty()) {
    os << " nums=";
    for (size_t i = 0; i < r.nums.size(); ++i) os << (i ? "," : "") << r.nums[i];
  }
  if (!r.labels.empty()) {
    os << " labels=";
    for (size_t i = 0; i < r.labels.size(); ++i) {
      os << (i ? "," : "");
      if (r.labels[i].transparent()) {
        os << '@' << r.labels[i].owner;
      } else {
        os << '#' << r.labels[i].value.hi << ':' << r.labels[i].value.lo;
      }
    }
  }
  return os.str();
}

}  // namespace

std::string Transcript::to_string() const {
  std::ostringstream os;
  os << tracepriv::to_string(vantage) << '\n';
  for (const Record& r : records) os << record_line(r) << '\n';
  return os.str();
}

bool operator==(const Transcript& a, const Transcript& b) {
  return a.to_string() == b.to_string();
}

std::string first_difference(const Transcript& a, const Transcript& b) {
  const size_t n = std::min(a.records.size(), b.records.size());
  for (size_t i = 0; i < n; ++i) {
    const std::string la = record_line(a.records[i]);
    const std::string lb = record_line(b.records[i]);
    if (la != lb) {
      return "record " + std::to_string(i) + ": " + la + "  vs  " + lb;
    }
  }
  if (a.records.size() != b.records.size()) {
    return "record counts differ: " + std::to_string(a.records.size()) + " vs " +
           std::to_string(b.records.size());
  }
  return "";
}

}  // namespace tracepriv
