#pragma once

// Deliberately damaged resolutions for negative controls.

#include <cstddef>
#include <utility>
#include <vector>

#include "fpn/resolution.hpp"

namespace fpn {

// Adds a generator of degree d to F_i and F_{i+1} with d(f) = e.  The
// result is still exact but no longer minimal.  Requires i < length.
template <Field F>
PartialFreeResolution<F> pad_with_identity(const PartialFreeResolution<F>& res, int i, int d) {
  if (i < 0 || i >= res.length()) throw ValidationError("padding position out of range");
  PartialFreeResolution<F> out{res.side, res.target_kind, res.ring, res.target, {}, {}};
  const F& field = res.field();
  for (int k = 0; k <= res.length(); ++k) {
    auto degs = res.terms[k]->generator_degrees();
    if (k == i || k == i + 1) degs.push_back(d);
    out.terms.push_back(FreeModule<F>::make(res.ring, degs));
  }
  // New generators are appended last, so old coordinates stay valid.
  for (int k = 0; k <= res.length(); ++k) {
    auto images = res.maps[k].images();
    if (k == i) images.push_back({});
    if (k == i + 1) {
      const auto& target = *out.terms[i];
      images.push_back(d <= res.degree_bound()
                           ? unit_vector(field, target.index(d, target.rank() - 1, res.ring->unit_index()))
                           : SparseVec<F>{});
    }
    ModulePtr<F> tgt = k == 0 ? res.target : ModulePtr<F>(out.terms[k - 1]);
    out.maps.emplace_back(out.terms[k], tgt, std::move(images));
  }
  return out;
}

// Replaces the image of generator s of F_i by `image` (coordinates in F_{i-1}).
template <Field F>
PartialFreeResolution<F> perturb_generator(const PartialFreeResolution<F>& res, int i, std::size_t s, SparseVec<F> image) {
  PartialFreeResolution<F> out = res;
  auto images = res.maps.at(i).images();
  images.at(s) = std::move(image);
  out.maps[i] = GradedMap<F>(res.maps[i].source_ptr(), res.maps[i].target_ptr(), std::move(images));
  return out;
}

// Multiplies the image of generator s of F_i by a scalar.
template <Field F>
PartialFreeResolution<F> perturb_scale(const PartialFreeResolution<F>& res, int i, std::size_t s, long factor) {
  const F& field = res.field();
  auto images = res.maps.at(i).images();
  SparseVec<F> scaled;
  for (const auto& e : images.at(s)) scaled.push_back({e.index, field.mul(e.value, field.from_int(factor))});
  return perturb_generator(res, i, s, collect(field, std::move(scaled)));
}

}  // namespace fpn
