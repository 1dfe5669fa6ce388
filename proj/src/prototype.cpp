#include "chansel/prototype.hpp"

#include <algorithm>
#include <cmath>

#include "chansel/errors.hpp"

namespace chansel {

std::string_view prototype_kind_token(PrototypeKind kind) {
  return kind == PrototypeKind::Mean ? "mean" : "median";
}

PrototypeKind parse_prototype_kind(std::string_view token) {
  if (token == "mean") return PrototypeKind::Mean;
  if (token == "median") return PrototypeKind::Median;
  raise(errc::invalid_spec, "prototype kind must be 'mean' or 'median', got '" +
                                std::string(token) + "'");
}

PrototypeSet compute_prototypes(const MtsDataset& ds, PrototypeKind kind) {
  const std::size_t k = ds.num_classes();
  if (ds.n_instances == 0) raise(errc::empty_class, "dataset has no instances");
  if (k < 2) raise(errc::single_class, "prototypes need at least two classes");

  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t n = 0; n < ds.n_instances; ++n) {
    members[static_cast<std::size_t>(ds.labels[n])].push_back(n);
  }
  PrototypeSet ps;
  ps.n_classes = k;
  ps.n_channels = ds.n_channels;
  ps.series_length = ds.series_length;
  ps.kind = kind;
  ps.proto.assign(k * ds.n_channels * ds.series_length, 0.0);
  ps.class_counts.resize(k);
  for (std::size_t cls = 0; cls < k; ++cls) {
    if (members[cls].empty()) {
      raise(errc::empty_class, "class '" + ds.label_names[cls] + "' has no instances");
    }
    ps.class_counts[cls] = members[cls].size();
  }

  std::vector<double> column;
  for (std::size_t cls = 0; cls < k; ++cls) {
    const auto& rows = members[cls];
    for (std::size_t c = 0; c < ds.n_channels; ++c) {
      double* out = ps.proto.data() + (cls * ds.n_channels + c) * ds.series_length;
      if (kind == PrototypeKind::Mean) {
        for (std::size_t n : rows) {
          const double* src = ds.values.data() + (n * ds.n_channels + c) * ds.series_length;
          for (std::size_t t = 0; t < ds.series_length; ++t) out[t] += src[t];
        }
        const double inv = 1.0 / static_cast<double>(rows.size());
        for (std::size_t t = 0; t < ds.series_length; ++t) out[t] *= inv;
      } else {
        column.resize(rows.size());
        for (std::size_t t = 0; t < ds.series_length; ++t) {
          for (std::size_t i = 0; i < rows.size(); ++i) column[i] = ds.value(rows[i], c, t);
          std::sort(column.begin(), column.end());
          const std::size_t mid = column.size() / 2;
          out[t] = (column.size() % 2 == 1)
                       ? column[mid]
                       : 0.5 * (column[mid - 1] + column[mid]);
        }
      }
    }
  }
  return ps;
}

MtsDataset znormalize(const MtsDataset& ds) {
  std::vector<double> values(ds.values.size());
  const std::size_t l = ds.series_length;
  for (std::size_t n = 0; n < ds.n_instances; ++n) {
    for (std::size_t c = 0; c < ds.n_channels; ++c) {
      const double* src = ds.values.data() + (n * ds.n_channels + c) * l;
      double* dst = values.data() + (n * ds.n_channels + c) * l;
      double mean = 0.0;
      for (std::size_t t = 0; t < l; ++t) mean += src[t];
      mean /= static_cast<double>(l);
      double var = 0.0;
      for (std::size_t t = 0; t < l; ++t) {
        const double d = src[t] - mean;
        var += d * d;
      }
      const double std_dev = std::sqrt(var / static_cast<double>(l));
      if (std_dev < 1e-12) {
        std::fill(dst, dst + l, 0.0);
      } else {
        for (std::size_t t = 0; t < l; ++t) dst[t] = (src[t] - mean) / std_dev;
      }
    }
  }
  return MtsDataset::make(ds.name, ds.n_instances, ds.n_channels, l, std::move(values),
                          ds.labels, ds.label_names, ds.channel_names);
}

}  // namespace chansel
