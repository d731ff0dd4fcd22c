// Copyright 2026 The LDPT Authors
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

#include "ldpt/channels.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace ldpt {
namespace {

absl::Status ValidateRho(double rho) {
  if (!std::isfinite(rho) || rho <= 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("rho must be a finite positive real, got ", rho));
  }
  return absl::OkStatus();
}

absl::Status ValidateFlip(double flip) {
  if (!(flip >= 0.0 && flip <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("flip probability must lie in [0, 1], got ", flip));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<RapporParams> RapporParams::FromRho(double rho) {
  if (absl::Status s = ValidateRho(rho); !s.ok()) return s;
  const double e = std::exp(rho / 2.0);
  RapporParams params;
  params.rho = rho;
  params.alpha = (e - 1.0) / (e + 1.0);
  params.beta = 1.0 / (e + 1.0);
  params.flip = params.beta;
  return params;
}

double RrFlipProbability(double rho) { return 1.0 / (std::exp(rho) + 1.0); }

absl::StatusOr<Channel> Channel::Rappor(int k, double rho, double flip) {
  if (k < 1) return absl::InvalidArgumentError("RAPPOR needs k >= 1");
  if (absl::Status s = ValidateRho(rho); !s.ok()) return s;
  if (absl::Status s = ValidateFlip(flip); !s.ok()) return s;
  Channel ch;
  ch.kind_ = Kind::kRappor;
  ch.input_size_ = k;
  ch.output_width_ = k;
  ch.rho_ = rho;
  ch.flip_ = flip;
  return ch;
}

absl::StatusOr<Channel> Channel::Membership(IndexSet set, double rho,
                                            double flip) {
  if (set.universe() < 1) {
    return absl::InvalidArgumentError("membership channel needs inputs");
  }
  if (absl::Status s = ValidateRho(rho); !s.ok()) return s;
  if (absl::Status s = ValidateFlip(flip); !s.ok()) return s;
  Channel ch;
  ch.kind_ = Kind::kMembership;
  ch.input_size_ = set.universe();
  ch.output_width_ = 1;
  ch.rho_ = rho;
  ch.flip_ = flip;
  ch.set_ = std::move(set);
  return ch;
}

absl::StatusOr<Channel> Channel::Tabular(std::vector<std::vector<double>> w,
                                         double rho) {
  if (absl::Status s = ValidateRho(rho); !s.ok()) return s;
  if (w.empty() || w[0].empty()) {
    return absl::InvalidArgumentError("empty channel table");
  }
  const std::size_t outputs = w[0].size();
  for (std::size_t x = 0; x < w.size(); ++x) {
    if (w[x].size() != outputs) {
      return absl::InvalidArgumentError("ragged channel table");
    }
    double total = 0.0;
    for (double v : w[x]) {
      if (!(v >= 0.0)) {
        return absl::InvalidArgumentError("negative channel probability");
      }
      total += v;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", x, " of the channel sums to ", total));
    }
  }
  Channel ch;
  ch.kind_ = Kind::kTabular;
  ch.input_size_ = static_cast<int>(w.size());
  ch.output_width_ = std::max(1, static_cast<int>(std::bit_width(outputs - 1)));
  ch.rho_ = rho;
  ch.table_ = std::move(w);
  return ch;
}

std::uint64_t Channel::num_outputs() const {
  if (kind_ == Kind::kTabular) return table_[0].size();
  if (output_width_ >= 64) return std::numeric_limits<std::uint64_t>::max();
  return 1ULL << output_width_;
}

double Channel::Probability(std::uint64_t y, int x) const {
  switch (kind_) {
    case Kind::kRappor: {
      // Number of coordinates where y disagrees with the one-hot code of x.
      const int d = std::popcount(y ^ (1ULL << x));
      return std::pow(flip_, d) * std::pow(1.0 - flip_, output_width_ - d);
    }
    case Kind::kMembership: {
      const bool truth = set_.Contains(x);
      return (y == 1) == truth ? 1.0 - flip_ : flip_;
    }
    case Kind::kTabular:
      return y < table_[x].size() ? table_[x][y] : 0.0;
  }
  return 0.0;
}

void Channel::Sample(int x, Stream& stream,
                     std::span<std::uint64_t> out) const {
  std::fill(out.begin(), out.end(), 0);
  switch (kind_) {
    case Kind::kRappor:
      for (int j = 0; j < output_width_; ++j) {
        const bool bit = (j == x) != stream.Bernoulli(flip_);
        if (bit) out[j >> 6] |= 1ULL << (j & 63);
      }
      return;
    case Kind::kMembership:
      out[0] = SampleBit(x, stream) ? 1 : 0;
      return;
    case Kind::kTabular: {
      const double u = stream.Uniform();
      double acc = 0.0;
      std::size_t y = 0;
      for (; y + 1 < table_[x].size(); ++y) {
        acc += table_[x][y];
        if (u < acc) break;
      }
      out[0] = y;
      return;
    }
  }
}

absl::StatusOr<Channel> Channel::WithFlip(double flip) const {
  switch (kind_) {
    case Kind::kRappor:
      return Rappor(input_size_, rho_, flip);
    case Kind::kMembership:
      return Membership(set_, rho_, flip);
    case Kind::kTabular:
      break;
  }
  return absl::InvalidArgumentError("tabular channels have no flip parameter");
}

absl::StatusOr<Channel> RapporChannel(int k, double rho) {
  absl::StatusOr<RapporParams> params = RapporParams::FromRho(rho);
  if (!params.ok()) return params.status();
  return Channel::Rappor(k, rho, params->flip);
}

absl::StatusOr<Channel> HrBitChannel(const IndexSet& c, int k, double rho) {
  if (c.universe() < k) {
    return absl::InvalidArgumentError(
        absl::StrCat("column set universe ", c.universe(),
                     " is smaller than the domain size ", k));
  }
  return Channel::Membership(c.Restrict(k), rho, RrFlipProbability(rho));
}

absl::StatusOr<Channel> RrBinaryChannel(double rho) {
  const int one[] = {1};
  return Channel::Membership(IndexSet::FromMembers(2, one), rho,
                             RrFlipProbability(rho));
}

absl::StatusOr<Channel> SubsetThenRr(const IndexSet& s, double rho) {
  return Channel::Membership(s, rho, RrFlipProbability(rho));
}

absl::StatusOr<double> LdpRatio(const Channel& channel) {
  if (!channel.enumerable()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "sampling-only channel: ", channel.output_width(),
        "-bit messages cannot be enumerated"));
  }
  double worst = 1.0;
  for (std::uint64_t y = 0; y < channel.num_outputs(); ++y) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int x = 0; x < channel.input_size(); ++x) {
      const double w = channel.Probability(y, x);
      lo = std::min(lo, w);
      hi = std::max(hi, w);
    }
    if (hi == 0.0) continue;
    if (lo == 0.0) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, hi / lo);
  }
  return worst;
}

bool CertifiesLdp(double ratio, double rho) {
  return ratio <= std::exp(rho) * (1.0 + 1e-12);
}

}  // namespace ldpt
