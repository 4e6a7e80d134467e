#include "sublat/enumerate.hpp"

#include <stdexcept>

namespace sublat {

std::uint64_t off_diagonal_count(const std::vector<std::int64_t>& diag) {
  std::int64_t total = 1;
  for (std::size_t j = 1; j < diag.size(); ++j) total = checked_mul(total, checked_pow(diag[j], static_cast<unsigned>(j)));
  return static_cast<std::uint64_t>(total);
}

std::vector<HnfWorkUnit> hnf_work_units(int n, std::int64_t m, std::uint64_t chunk) {
  if (n < 1 || m < 1) throw std::invalid_argument("hnf_stream: need n >= 1 and m >= 1");
  if (chunk == 0) throw std::invalid_argument("hnf_work_units: chunk must be positive");
  std::vector<HnfWorkUnit> units;
  for_each_divisor_composition(m, n, [&](std::span<const std::int64_t> d) {
    std::vector<std::int64_t> diag(d.begin(), d.end());
    const std::uint64_t total = off_diagonal_count(diag);
    for (std::uint64_t b = 0; b < total; b += chunk) units.push_back({diag, b, std::min(total, b + chunk)});
  });
  return units;
}

HnfStream::HnfStream(int n, std::int64_t m)
    : HnfStream(n, hnf_work_units(n, m, UINT64_MAX)) {}

HnfStream::HnfStream(int n, std::vector<HnfWorkUnit> units) : n_(n), units_(std::move(units)), current_(n) {
  if (n < 1) throw std::invalid_argument("hnf_stream: need n >= 1");
  for (const auto& u : units_)
    if (static_cast<int>(u.diag.size()) != n) throw std::invalid_argument("hnf_stream: work unit has wrong dimension");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots_.emplace_back(i, j);
}

void HnfStream::seek(std::uint64_t rank) {
  // Mixed-radix decode, last slot least significant.
  for (auto it = slots_.rbegin(); it != slots_.rend(); ++it) {
    const auto [i, j] = *it;
    const auto radix = static_cast<std::uint64_t>(current_.entries_[j * n_ + j]);
    current_.entries_[i * n_ + j] = static_cast<std::int64_t>(rank % radix);
    rank /= radix;
  }
}

bool HnfStream::start_unit() {
  while (unit_ < units_.size()) {
    const auto& u = units_[unit_];
    if (u.begin < u.end) {
      for (int i = 0; i < n_; ++i) current_.entries_[i * n_ + i] = u.diag[i];
      seek(u.begin);
      rank_ = u.begin;
      return true;
    }
    ++unit_;
  }
  return false;
}

bool HnfStream::step() {
  for (auto it = slots_.rbegin(); it != slots_.rend(); ++it) {
    const auto [i, j] = *it;
    auto& v = current_.entries_[i * n_ + j];
    if (++v < current_.entries_[j * n_ + j]) return true;
    v = 0;
  }
  return false;
}

const HnfMatrix* HnfStream::next() {
  if (!started_) {
    started_ = true;
    return start_unit() ? &current_ : nullptr;
  }
  if (unit_ >= units_.size()) return nullptr;
  ++rank_;
  if (rank_ < units_[unit_].end) {
    step();
    return &current_;
  }
  ++unit_;
  return start_unit() ? &current_ : nullptr;
}

std::uint64_t hnf_count_stream_check(int n, std::int64_t m) {
  HnfStream s(n, m);
  std::uint64_t count = 0;
  while (s.next()) ++count;
  return count;
}

}  // namespace sublat
