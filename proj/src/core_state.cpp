#include "core_state.hpp"

#include <stdexcept>
#include <string>

namespace idnc {

FeedbackMatrix::FeedbackMatrix(ReceiverId receiver_count, PacketId packet_count,
                               bool initially_wanted)
    : receiver_count_(receiver_count),
      packet_count_(packet_count),
      wanted_(static_cast<std::size_t>(receiver_count) * packet_count,
              initially_wanted ? 1 : 0) {
  if (receiver_count == 0 || packet_count == 0)
    throw std::invalid_argument("feedback matrix needs at least one receiver and one packet");
}

FeedbackMatrix FeedbackMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty() || rows.front().empty())
    throw std::invalid_argument("feedback matrix literal is empty");
  FeedbackMatrix m(static_cast<ReceiverId>(rows.size()),
                   static_cast<PacketId>(rows.front().size()));
  for (ReceiverId i = 0; i < m.receiver_count_; ++i) {
    if (rows[i].size() != m.packet_count_)
      throw std::invalid_argument("feedback matrix rows have unequal lengths");
    for (PacketId j = 0; j < m.packet_count_; ++j) {
      if (rows[i][j] != 0 && rows[i][j] != 1)
        throw std::invalid_argument("feedback matrix entries must be 0 or 1");
      m.set_wanted(i, j, rows[i][j] == 1);
    }
  }
  return m;
}

void FeedbackMatrix::check_ids(ReceiverId receiver, PacketId packet) const {
  if (receiver >= receiver_count_)
    throw std::invalid_argument("receiver id " + std::to_string(receiver) + " out of range");
  if (packet >= packet_count_)
    throw std::invalid_argument("packet id " + std::to_string(packet) + " out of range");
}

bool FeedbackMatrix::wanted(ReceiverId receiver, PacketId packet) const {
  check_ids(receiver, packet);
  return wanted_[static_cast<std::size_t>(receiver) * packet_count_ + packet] != 0;
}

void FeedbackMatrix::set_wanted(ReceiverId receiver, PacketId packet, bool wanted) {
  check_ids(receiver, packet);
  wanted_[static_cast<std::size_t>(receiver) * packet_count_ + packet] = wanted ? 1 : 0;
}

void FeedbackMatrix::acknowledge(ReceiverId receiver, PacketId packet) {
  if (!wanted(receiver, packet))
    throw ContractViolation("acknowledged packet " + std::to_string(packet) +
                            " already held by receiver " + std::to_string(receiver));
  set_wanted(receiver, packet, false);
}

std::vector<PacketId> FeedbackMatrix::wants_of(ReceiverId receiver) const {
  std::vector<PacketId> out;
  for (PacketId j = 0; j < packet_count_; ++j)
    if (wanted(receiver, j)) out.push_back(j);
  return out;
}

std::vector<PacketId> FeedbackMatrix::has_of(ReceiverId receiver) const {
  std::vector<PacketId> out;
  for (PacketId j = 0; j < packet_count_; ++j)
    if (!wanted(receiver, j)) out.push_back(j);
  return out;
}

std::size_t FeedbackMatrix::wants_count(ReceiverId receiver) const {
  std::size_t n = 0;
  for (PacketId j = 0; j < packet_count_; ++j)
    if (wanted(receiver, j)) ++n;
  return n;
}

bool FeedbackMatrix::all_satisfied() const {
  for (std::uint8_t w : wanted_)
    if (w) return false;
  return true;
}

std::vector<ReceiverId> FeedbackMatrix::wanting_receivers() const {
  std::vector<ReceiverId> out;
  for (ReceiverId i = 0; i < receiver_count_; ++i)
    if (!wants_empty(i)) out.push_back(i);
  return out;
}

Classification classify_combination(const FeedbackMatrix& feedback, ReceiverId receiver,
                                    std::span<const PacketId> combo) {
  if (combo.empty()) throw std::invalid_argument("empty packet combination");
  int wanted_hits = 0;
  PacketId decodable = 0;
  for (PacketId packet : combo) {
    if (!feedback.wanted(receiver, packet)) continue;
    ++wanted_hits;
    decodable = packet;
    if (wanted_hits > 1) return {CombinationKind::kNonInstantlyDecodable, 0};
  }
  if (wanted_hits == 0) return {CombinationKind::kNonInnovative, 0};
  return {CombinationKind::kInstantlyDecodable, decodable};
}

int apply_reception(FeedbackMatrix& feedback, ReceiverState& receiver,
                    std::span<const PacketId> combo) {
  const Classification c = classify_combination(feedback, receiver.id, combo);
  if (c.kind == CombinationKind::kInstantlyDecodable) {
    feedback.acknowledge(receiver.id, c.decodable_packet);
    return 0;
  }
  if (feedback.wants_empty(receiver.id)) return 0;
  receiver.cumulative_delay += 1;
  return 1;
}

}  // namespace idnc
