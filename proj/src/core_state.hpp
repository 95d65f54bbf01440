#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "errors.hpp"

namespace idnc {

using ReceiverId = std::uint32_t;
using PacketId = std::uint32_t;
using DelayCount = std::uint64_t;

// Sender-side erasure bookkeeping: entry (receiver, packet) is 1 while the
// receiver still wants the packet. The Wants and Has sets are views over the
// rows, so they can never diverge from the matrix.
class FeedbackMatrix {
 public:
  FeedbackMatrix(ReceiverId receiver_count, PacketId packet_count, bool initially_wanted = false);

  // Row-major 0/1 literals, mostly for tests and fixtures.
  static FeedbackMatrix from_rows(const std::vector<std::vector<int>>& rows);

  ReceiverId receiver_count() const { return receiver_count_; }
  PacketId packet_count() const { return packet_count_; }

  bool wanted(ReceiverId receiver, PacketId packet) const;
  void set_wanted(ReceiverId receiver, PacketId packet, bool wanted);

  // Perfect feedback: moves a wanted packet to the Has side. Acknowledging a
  // packet the receiver already holds is a contract violation.
  void acknowledge(ReceiverId receiver, PacketId packet);

  std::vector<PacketId> wants_of(ReceiverId receiver) const;
  std::vector<PacketId> has_of(ReceiverId receiver) const;
  std::size_t wants_count(ReceiverId receiver) const;
  bool wants_empty(ReceiverId receiver) const { return wants_count(receiver) == 0; }
  bool all_satisfied() const;
  std::vector<ReceiverId> wanting_receivers() const;

  friend bool operator==(const FeedbackMatrix&, const FeedbackMatrix&) = default;

 private:
  void check_ids(ReceiverId receiver, PacketId packet) const;

  ReceiverId receiver_count_ = 0;
  PacketId packet_count_ = 0;
  std::vector<std::uint8_t> wanted_;  // row-major
};

enum class CombinationKind {
  kNonInnovative,         // no wanted packet in the combination
  kInstantlyDecodable,    // exactly one wanted packet
  kNonInstantlyDecodable  // two or more wanted packets
};

struct Classification {
  CombinationKind kind = CombinationKind::kNonInnovative;
  PacketId decodable_packet = 0;  // meaningful only for kInstantlyDecodable
};

struct ReceiverState {
  ReceiverId id = 0;
  double erasure_prob = 0.0;
  DelayCount cumulative_delay = 0;
};

// How one receiver sees a packet combination. `combo` must be a non-empty set
// of distinct packet ids within the frame.
Classification classify_combination(const FeedbackMatrix& feedback, ReceiverId receiver,
                                    std::span<const PacketId> combo);

// Outcome of a successful (non-erased) reception: an instantly decodable
// packet is acknowledged immediately; otherwise a receiver that still wants
// packets takes one unit of decoding delay. Returns the delay increment.
int apply_reception(FeedbackMatrix& feedback, ReceiverState& receiver,
                    std::span<const PacketId> combo);

}  // namespace idnc
