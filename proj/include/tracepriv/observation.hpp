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

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace tracepriv {

// A pseudonym, key or region identifier as it appears on the wire: an opaque
// random value, fresh per use site, never reused within a run.
struct Label {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  friend bool operator==(const Label&, const Label&) = default;
  friend auto operator<=>(const Label&, const Label&) = default;
};

// A label slot inside a record. When the adversary can name the value's owner
// (a colluding corrupted client recognizes its own pseudonyms and keys), the
// slot is transparent and carries the owner id; transparent slots are kept
// verbatim by canonicalization, opaque ones are renamed.
struct LabelSlot {
  Label value;
  std::string owner;  // empty = opaque

  bool transparent() const { return !owner.empty(); }
};

enum class RecordKind {
  kMeetingCount,    // (batch, observer, nums[0]=count)
  kAtRiskBit,       // (batch, observer)
  kCorruptedMeet,   // (batch, users = the two corrupted identities)
  kHeardToken,      // (batch, observer, labels[0]=token, nums[0]=co-observers)
  kServerEvent,     // (batch, users, nums[0]: 0=meeting 1=infection)
  kServerUpload,    // (batch, observer=infected identity, users=partners)
  kServerNotify,    // (batch, users = notified identities)
  kAnonUpload,      // (batch, labels, nums: per-label batch tags or validity)
  kPublishedGroup,  // (batch, labels, nums: validity bounds when keyed)
  kMatch,           // (batch, observer, nums[0]=encounter batch, labels opt.)
  kMatchCount,      // (batch, observer, nums[0]=count)
};

std::string to_string(RecordKind k);

struct Record {
  int batch = 0;
  RecordKind kind = RecordKind::kServerEvent;
  std::string observer;
  std::vector<std::string> users;
  std::vector<std::int64_t> nums;
  std::vector<LabelSlot> labels;
};

enum class Vantage { kCorruptedClients, kServer };

std::string to_string(Vantage v);

struct Observation {
  Vantage vantage = Vantage::kServer;
  std::vector<Record> records;
};

// Canonical form of an observation: within-batch order is replaced by a
// structural sort (within one batch the adversary cannot observe event
// order), and every opaque label is replaced by its index of first appearance
// in that order. Two runs of the same protocol on the same scenario yield
// equal transcripts regardless of the rng that drew the label values.
struct Transcript {
  Vantage vantage = Vantage::kServer;
  std::vector<Record> records;

  std::string to_string() const;

  friend bool operator==(const Transcript& a, const Transcript& b);
};

Transcript canonicalize(const Observation& obs);

// First line at which the two transcripts disagree, for DIFFER reporting.
std::string first_difference(const Transcript& a, const Transcript& b);

}  // namespace tracepriv
