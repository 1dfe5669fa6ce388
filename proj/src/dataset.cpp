#include "chansel/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "chansel/errors.hpp"

namespace chansel {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string_view> tokenize(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool is_token(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ':' || c == ',') {
      return false;
    }
  }
  return true;
}

double parse_value(std::string_view tok, std::string_view context) {
  tok = trim(tok);
  if (tok == "?") raise(errc::missing_value, std::string("'?' in ") + std::string(context));
  double v = 0.0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last || tok.empty()) {
    raise(errc::non_finite_value,
          "'" + std::string(tok) + "' is not a number in " + std::string(context));
  }
  if (!std::isfinite(v)) {
    raise(errc::non_finite_value,
          "non-finite value '" + std::string(tok) + "' in " + std::string(context));
  }
  return v;
}

bool try_parse_index(std::string_view tok, std::size_t& out) {
  tok = trim(tok);
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return !tok.empty() && res.ec == std::errc{} && res.ptr == tok.data() + tok.size();
}

std::size_t parse_index(std::string_view tok, std::string_view context) {
  std::size_t v = 0;
  if (!try_parse_index(tok, v)) {
    raise(errc::malformed_header,
          "'" + std::string(tok) + "' is not a non-negative integer in " + std::string(context));
  }
  return v;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t eol = text.find('\n', start);
    if (eol == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, eol - start));
    start = eol + 1;
  }
  return lines;
}

}  // namespace

MtsDataset MtsDataset::make(std::string name, std::size_t n_instances,
                            std::size_t n_channels, std::size_t series_length,
                            std::vector<double> values, std::vector<int> labels,
                            std::vector<std::string> label_names,
                            std::vector<std::string> channel_names) {
  if (name.empty()) name = "unnamed";
  if (!is_token(name)) raise(errc::invalid_dataset, "dataset name must be a single token");
  if (n_channels == 0) raise(errc::invalid_dataset, "dataset needs at least one channel");
  if (series_length == 0) raise(errc::invalid_dataset, "dataset needs at least one time point");
  if (values.size() != n_instances * n_channels * series_length) {
    raise(errc::invalid_dataset, "value buffer does not match declared shape");
  }
  if (labels.size() != n_instances) {
    raise(errc::invalid_dataset, "need exactly one label per instance");
  }
  for (double v : values) {
    if (!std::isfinite(v)) raise(errc::non_finite_value, "dataset contains a non-finite value");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& lbl : label_names) {
    if (!is_token(lbl)) raise(errc::invalid_dataset, "label '" + lbl + "' is not a plain token");
    if (!seen.insert(lbl).second) raise(errc::invalid_dataset, "duplicate label '" + lbl + "'");
  }
  // A declared label may have no instances here (train/test files share a
  // header); prototype computation rejects empty classes when it matters.
  const int k = static_cast<int>(label_names.size());
  for (int id : labels) {
    if (id < 0 || id >= k) raise(errc::unknown_label, "label id " + std::to_string(id) + " out of range");
  }
  if (n_instances > 0 && label_names.empty()) {
    raise(errc::invalid_dataset, "labeled instances need a label vocabulary");
  }
  if (!channel_names.empty()) {
    if (channel_names.size() != n_channels) {
      raise(errc::invalid_dataset, "channel_names must name every channel or be empty");
    }
    for (const auto& cn : channel_names) {
      if (cn.empty() || std::string_view(trim(cn)) != std::string_view(cn) ||
          cn.find('\n') != std::string::npos || cn.find('\r') != std::string::npos) {
        raise(errc::invalid_dataset, "channel name '" + cn + "' is not printable");
      }
    }
  }
  MtsDataset ds;
  ds.name = std::move(name);
  ds.n_instances = n_instances;
  ds.n_channels = n_channels;
  ds.series_length = series_length;
  ds.values = std::move(values);
  ds.labels = std::move(labels);
  ds.label_names = std::move(label_names);
  ds.channel_names = std::move(channel_names);
  return ds;
}

std::string format_value(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

MtsDataset parse_archive_string(std::string_view text, std::string fallback_name) {
  std::optional<std::string> problem_name;
  std::optional<std::size_t> declared_dims;
  std::optional<std::size_t> declared_length;
  bool saw_equal_length = false;
  bool saw_data = false;
  std::optional<std::vector<std::string>> class_labels;
  std::map<std::size_t, std::string> named_channels;

  std::vector<double> values;
  std::vector<int> labels;
  std::size_t n_channels = 0;
  std::size_t series_length = 0;
  std::size_t n_instances = 0;

  std::unordered_map<std::string_view, int> label_ids;

  const auto lines = split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string_view line = trim(lines[li]);
    if (line.empty()) continue;
    const std::string ctx = "line " + std::to_string(li + 1);

    if (line.front() == '#') {
      // "#channel <i> <name>" is the one structured comment form; anything
      // else that merely looks similar is an ordinary comment
      const std::string_view body = trim(line.substr(1));
      std::size_t idx = 0;
      if (!saw_data && body.starts_with("channel ")) {
        auto toks = tokenize(body);
        if (toks.size() >= 3 && try_parse_index(toks[1], idx)) {
          const std::size_t name_pos =
              static_cast<std::size_t>(toks[2].data() - body.data());
          const std::string name(trim(body.substr(name_pos)));
          if (!named_channels.emplace(idx, name).second) {
            raise(errc::malformed_header, "duplicate channel name for index " +
                                              std::to_string(idx) + " at " + ctx);
          }
        }
      }
      continue;
    }

    if (!saw_data) {
      if (line.front() != '@') {
        raise(errc::malformed_header, "expected a header line at " + ctx);
      }
      const std::size_t sp = line.find_first_of(" \t");
      const std::string_view tag = line.substr(0, sp);
      const std::string_view arg =
          (sp == std::string_view::npos) ? std::string_view{} : trim(line.substr(sp));
      if (tag == "@problemName") {
        if (problem_name) raise(errc::malformed_header, "duplicate @problemName at " + ctx);
        if (!is_token(arg)) raise(errc::malformed_header, "@problemName needs a token at " + ctx);
        problem_name = std::string(arg);
      } else if (tag == "@dimensions") {
        if (declared_dims) raise(errc::malformed_header, "duplicate @dimensions at " + ctx);
        declared_dims = parse_index(arg, ctx);
      } else if (tag == "@equalLength") {
        if (saw_equal_length) raise(errc::malformed_header, "duplicate @equalLength at " + ctx);
        saw_equal_length = true;
        if (arg == "false") {
          raise(errc::ragged_data, "unequal-length series are not supported");
        }
        if (arg != "true") {
          raise(errc::malformed_header, "@equalLength must be true or false at " + ctx);
        }
      } else if (tag == "@seriesLength") {
        if (declared_length) raise(errc::malformed_header, "duplicate @seriesLength at " + ctx);
        declared_length = parse_index(arg, ctx);
      } else if (tag == "@classLabel") {
        if (class_labels) raise(errc::malformed_header, "duplicate @classLabel at " + ctx);
        auto toks = tokenize(arg);
        if (toks.empty() || (toks[0] != "true" && toks[0] != "false")) {
          raise(errc::malformed_header, "@classLabel must start with true/false at " + ctx);
        }
        if (toks[0] == "false") {
          raise(errc::malformed_header, "class labels are required at " + ctx);
        }
        if (toks.size() < 2) {
          raise(errc::malformed_header, "@classLabel declares no labels at " + ctx);
        }
        std::vector<std::string> lbls;
        for (std::size_t i = 1; i < toks.size(); ++i) lbls.emplace_back(toks[i]);
        class_labels = std::move(lbls);
      } else if (tag == "@data") {
        if (!arg.empty()) raise(errc::malformed_header, "@data takes no argument at " + ctx);
        saw_data = true;
        if (!class_labels) {
          raise(errc::malformed_header, "@classLabel must appear before @data");
        }
        label_ids.reserve(class_labels->size());
        for (std::size_t i = 0; i < class_labels->size(); ++i) {
          label_ids.emplace((*class_labels)[i], static_cast<int>(i));
        }
      } else {
        raise(errc::malformed_header, "unknown header tag '" + std::string(tag) + "' at " + ctx);
      }
    } else {
      auto fields = split(line, ':');
      if (fields.size() < 2) {
        raise(errc::ragged_data, "data line without a label field at " + ctx);
      }
      const std::size_t line_channels = fields.size() - 1;
      if (n_instances == 0) {
        n_channels = line_channels;
        series_length = split(fields[0], ',').size();
      }
      if (line_channels != n_channels) {
        raise(errc::ragged_data, "expected " + std::to_string(n_channels) + " channels, got " +
                                     std::to_string(line_channels) + " at " + ctx);
      }
      for (std::size_t c = 0; c < n_channels; ++c) {
        auto toks = split(fields[c], ',');
        if (toks.size() != series_length) {
          raise(errc::ragged_data, "channel " + std::to_string(c) + " has length " +
                                       std::to_string(toks.size()) + ", expected " +
                                       std::to_string(series_length) + " at " + ctx);
        }
        for (const auto& tok : toks) values.push_back(parse_value(tok, ctx));
      }
      const std::string_view label_tok = trim(fields.back());
      const auto it = label_ids.find(label_tok);
      if (it == label_ids.end()) {
        raise(errc::unknown_label, "label '" + std::string(label_tok) +
                                       "' is not in the declared label set at " + ctx);
      }
      labels.push_back(it->second);
      ++n_instances;
    }
  }

  if (!saw_data) raise(errc::malformed_header, "missing @data section");
  if (n_instances == 0) raise(errc::malformed_header, "data section is empty");
  if (declared_dims && *declared_dims != n_channels) {
    raise(errc::ragged_data, "data has " + std::to_string(n_channels) +
                                 " channels but header declares " + std::to_string(*declared_dims));
  }
  if (declared_length && *declared_length != series_length) {
    raise(errc::ragged_data, "data has length " + std::to_string(series_length) +
                                 " but header declares " + std::to_string(*declared_length));
  }

  std::vector<std::string> channel_names;
  if (!named_channels.empty()) {
    if (named_channels.size() != n_channels ||
        named_channels.begin()->first != 0 ||
        std::prev(named_channels.end())->first != n_channels - 1) {
      raise(errc::malformed_header, "channel-name comments must cover indices 0.." +
                                        std::to_string(n_channels - 1) + " exactly once");
    }
    channel_names.reserve(n_channels);
    for (auto& [idx, nm] : named_channels) channel_names.push_back(std::move(nm));
  }

  return MtsDataset::make(problem_name.value_or(std::move(fallback_name)), n_instances,
                          n_channels, series_length, std::move(values), std::move(labels),
                          std::move(*class_labels), std::move(channel_names));
}

MtsDataset parse_archive_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(errc::io_failure, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) raise(errc::io_failure, "read error on '" + path.string() + "'");
  return parse_archive_string(buf.str(), path.stem().string());
}

std::string to_archive_string(const MtsDataset& ds) {
  if (ds.n_instances == 0) raise(errc::invalid_dataset, "cannot serialize an empty dataset");
  std::string out;
  out.reserve(ds.values.size() * 10 + 256);
  out += "@problemName " + ds.name + "\n";
  out += "@dimensions " + std::to_string(ds.n_channels) + "\n";
  out += "@equalLength true\n";
  out += "@seriesLength " + std::to_string(ds.series_length) + "\n";
  out += "@classLabel true";
  for (const auto& lbl : ds.label_names) {
    out += ' ';
    out += lbl;
  }
  out += '\n';
  for (std::size_t c = 0; c < ds.channel_names.size(); ++c) {
    out += "#channel " + std::to_string(c) + " " + ds.channel_names[c] + "\n";
  }
  out += "@data\n";
  for (std::size_t n = 0; n < ds.n_instances; ++n) {
    for (std::size_t c = 0; c < ds.n_channels; ++c) {
      if (c > 0) out += ':';
      for (std::size_t t = 0; t < ds.series_length; ++t) {
        if (t > 0) out += ',';
        out += format_value(ds.value(n, c, t));
      }
    }
    out += ':';
    out += ds.label_names[static_cast<std::size_t>(ds.labels[n])];
    out += '\n';
  }
  return out;
}

void write_archive_file(const MtsDataset& ds, const std::filesystem::path& path) {
  const std::string text = to_archive_string(ds);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(errc::io_failure, "cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) raise(errc::io_failure, "write error on '" + path.string() + "'");
}

MtsDataset restrict_channels(const MtsDataset& ds, std::span<const std::size_t> channels) {
  if (channels.empty()) raise(errc::empty_selection, "channel selection is empty");
  std::unordered_set<std::size_t> seen;
  for (std::size_t c : channels) {
    if (c >= ds.n_channels) {
      raise(errc::index_out_of_range, "channel " + std::to_string(c) + " out of 0.." +
                                          std::to_string(ds.n_channels - 1));
    }
    if (!seen.insert(c).second) {
      raise(errc::duplicate_channel, "channel " + std::to_string(c) + " selected twice");
    }
  }
  const std::size_t cprime = channels.size();
  std::vector<double> values;
  values.reserve(ds.n_instances * cprime * ds.series_length);
  for (std::size_t n = 0; n < ds.n_instances; ++n) {
    for (std::size_t c : channels) {
      const double* src = ds.values.data() + (n * ds.n_channels + c) * ds.series_length;
      values.insert(values.end(), src, src + ds.series_length);
    }
  }
  std::vector<std::string> channel_names;
  if (!ds.channel_names.empty()) {
    channel_names.reserve(cprime);
    for (std::size_t c : channels) channel_names.push_back(ds.channel_names[c]);
  }
  return MtsDataset::make(ds.name, ds.n_instances, cprime, ds.series_length,
                          std::move(values), ds.labels, ds.label_names,
                          std::move(channel_names));
}

std::uint64_t byte_size(const MtsDataset& ds) {
  return 8ULL * ds.n_instances * ds.n_channels * ds.series_length;
}

void write_csv_files(const MtsDataset& ds, const std::filesystem::path& values_path,
                     const std::filesystem::path& labels_path) {
  {
    std::ofstream out(values_path, std::ios::binary | std::ios::trunc);
    if (!out) raise(errc::io_failure, "cannot open '" + values_path.string() + "' for writing");
    out << "instance,channel,time,value\n";
    for (std::size_t n = 0; n < ds.n_instances; ++n) {
      for (std::size_t c = 0; c < ds.n_channels; ++c) {
        for (std::size_t t = 0; t < ds.series_length; ++t) {
          out << n << ',' << c << ',' << t << ',' << format_value(ds.value(n, c, t)) << '\n';
        }
      }
    }
    if (!out) raise(errc::io_failure, "write error on '" + values_path.string() + "'");
  }
  std::ofstream out(labels_path, std::ios::binary | std::ios::trunc);
  if (!out) raise(errc::io_failure, "cannot open '" + labels_path.string() + "' for writing");
  out << "instance,label\n";
  for (std::size_t n = 0; n < ds.n_instances; ++n) {
    out << n << ',' << ds.label_names[static_cast<std::size_t>(ds.labels[n])] << '\n';
  }
  if (!out) raise(errc::io_failure, "write error on '" + labels_path.string() + "'");
}

MtsDataset read_csv_files(const std::filesystem::path& values_path,
                          const std::filesystem::path& labels_path, std::string name) {
  auto read_lines = [](const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(errc::io_failure, "cannot open '" + path.string() + "' for reading");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
      const std::string_view t = trim(line);
      if (!t.empty()) lines.emplace_back(t);
    }
    return lines;
  };

  const auto value_lines = read_lines(values_path);
  if (value_lines.empty() || value_lines.front() != "instance,channel,time,value") {
    raise(errc::malformed_header, "values CSV must start with 'instance,channel,time,value'");
  }
  struct Cell {
    std::size_t n, c, t;
    double v;
  };
  std::vector<Cell> cells;
  cells.reserve(value_lines.size() - 1);
  std::size_t max_n = 0, max_c = 0, max_t = 0;
  for (std::size_t i = 1; i < value_lines.size(); ++i) {
    const std::string ctx = values_path.filename().string() + " line " + std::to_string(i + 1);
    auto fields = split(value_lines[i], ',');
    if (fields.size() != 4) raise(errc::ragged_data, "expected 4 columns at " + ctx);
    Cell cell{parse_index(fields[0], ctx), parse_index(fields[1], ctx),
              parse_index(fields[2], ctx), parse_value(fields[3], ctx)};
    max_n = std::max(max_n, cell.n);
    max_c = std::max(max_c, cell.c);
    max_t = std::max(max_t, cell.t);
    cells.push_back(cell);
  }
  if (cells.empty()) raise(errc::malformed_header, "values CSV has no rows");
  const std::size_t n_instances = max_n + 1, n_channels = max_c + 1, length = max_t + 1;
  const std::size_t total = n_instances * n_channels * length;
  if (cells.size() != total) {
    raise(errc::ragged_data, "values CSV has " + std::to_string(cells.size()) +
                                 " cells, expected a full " + std::to_string(total) + "-cell grid");
  }
  std::vector<double> values(total, 0.0);
  std::vector<char> seen(total, 0);
  for (const Cell& cell : cells) {
    const std::size_t at = (cell.n * n_channels + cell.c) * length + cell.t;
    if (seen[at]) {
      raise(errc::ragged_data, "duplicate cell (" + std::to_string(cell.n) + "," +
                                   std::to_string(cell.c) + "," + std::to_string(cell.t) + ")");
    }
    seen[at] = 1;
    values[at] = cell.v;
  }

  const auto label_lines = read_lines(labels_path);
  if (label_lines.empty() || label_lines.front() != "instance,label") {
    raise(errc::malformed_header, "labels CSV must start with 'instance,label'");
  }
  std::vector<std::string> label_of(n_instances);
  std::vector<char> labeled(n_instances, 0);
  for (std::size_t i = 1; i < label_lines.size(); ++i) {
    const std::string ctx = labels_path.filename().string() + " line " + std::to_string(i + 1);
    auto fields = split(label_lines[i], ',');
    if (fields.size() != 2) raise(errc::ragged_data, "expected 2 columns at " + ctx);
    const std::size_t n = parse_index(fields[0], ctx);
    if (n >= n_instances) {
      raise(errc::unknown_label, "labels CSV names instance " + std::to_string(n) +
                                     " not present in the values CSV");
    }
    if (labeled[n]) raise(errc::ragged_data, "instance " + std::to_string(n) + " labeled twice");
    labeled[n] = 1;
    label_of[n] = std::string(trim(fields[1]));
  }
  for (std::size_t n = 0; n < n_instances; ++n) {
    if (!labeled[n]) {
      raise(errc::ragged_data, "instance " + std::to_string(n) + " has no label");
    }
  }
  // vocabulary in order of first appearance by instance index
  std::vector<std::string> label_names;
  std::unordered_map<std::string, int> ids;
  std::vector<int> labels(n_instances);
  for (std::size_t n = 0; n < n_instances; ++n) {
    auto it = ids.find(label_of[n]);
    if (it == ids.end()) {
      label_names.push_back(label_of[n]);
      it = ids.emplace(label_of[n], static_cast<int>(label_names.size()) - 1).first;
    }
    labels[n] = it->second;
  }
  return MtsDataset::make(std::move(name), n_instances, n_channels, length,
                          std::move(values), std::move(labels), std::move(label_names));
}

}  // namespace chansel
