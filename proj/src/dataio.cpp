#include "fcpca/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "fcpca/simulate.hpp"

namespace fcpca {

namespace {

constexpr const char* kResultsHeader = "dataset,method,fold,accuracy,runtime_seconds,seed,config_hash";

std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
        const size_t pos = line.find(delim, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

double parse_number(const std::string& field, const std::string& path, size_t line_no) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    while (begin < end && (*begin == ' ')) ++begin;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        raise(ErrorKind::Parse,
              path + ":" + std::to_string(line_no) + ": non-numeric field '" + field + "'");
    return value;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

RawDataset load_delimited(const std::string& path, char delimiter) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::Io, "cannot open '" + path + "' for reading");

    std::vector<std::vector<double>> rows;
    std::vector<long long> raw_labels;
    std::string line;
    size_t line_no = 0;
    size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (delimiter == '\0') delimiter = line.find('\t') != std::string::npos ? '\t' : ',';

        const std::vector<std::string> fields = split_line(line, delimiter);
        if (fields.size() < 2)
            raise(ErrorKind::Format, path + ":" + std::to_string(line_no) + ": expected label plus series");
        if (width == 0) width = fields.size();
        if (fields.size() != width)
            raise(ErrorKind::Format, path + ":" + std::to_string(line_no) + ": row has " +
                                         std::to_string(fields.size() - 1) + " values, expected " +
                                         std::to_string(width - 1));

        const double label_raw = parse_number(fields[0], path, line_no);
        const double rounded = std::nearbyint(label_raw);
        if (std::abs(label_raw - rounded) > 1e-9)
            raise(ErrorKind::Parse, path + ":" + std::to_string(line_no) + ": non-integer class label '" +
                                        fields[0] + "'");
        raw_labels.push_back(static_cast<long long>(rounded));

        std::vector<double> values(width - 1);
        for (size_t j = 1; j < width; ++j) {
            values[j - 1] = parse_number(fields[j], path, line_no);
            if (!std::isfinite(values[j - 1]))
                raise(ErrorKind::Format, path + ":" + std::to_string(line_no) + ": missing/non-finite value");
        }
        rows.push_back(std::move(values));
    }
    if (rows.empty()) raise(ErrorKind::EmptyInput, "'" + path + "' contains no data rows");

    RawDataset out;
    out.name = std::filesystem::path(path).stem().string();
    out.samples.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width - 1));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j + 1 < width; ++j) out.samples(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];

    // remap labels to 1..c in sorted original order
    std::vector<long long> uniq = raw_labels;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    out.label_values = uniq;
    out.labels.reserve(raw_labels.size());
    for (long long v : raw_labels) {
        const auto it = std::lower_bound(uniq.begin(), uniq.end(), v);
        out.labels.push_back(static_cast<int>(it - uniq.begin()) + 1);
    }
    return out;
}

void save_delimited(const RawDataset& dataset, const std::string& path, char delimiter) {
    std::ofstream out(path);
    if (!out) raise(ErrorKind::Io, "cannot open '" + path + "' for writing");
    for (Eigen::Index i = 0; i < dataset.size(); ++i) {
        const int l = dataset.labels[static_cast<size_t>(i)];
        const long long original =
            dataset.label_values.empty() ? l : dataset.label_values[static_cast<size_t>(l - 1)];
        out << original;
        for (Eigen::Index j = 0; j < dataset.length(); ++j) out << delimiter << format_double(dataset.samples(i, j));
        out << '\n';
    }
    if (!out) raise(ErrorKind::Io, "write failed for '" + path + "'");
}

std::pair<RawDataset, int> merge_train_test(const RawDataset& train, const RawDataset& test) {
    if (train.length() != test.length())
        raise(ErrorKind::Format, "train series length " + std::to_string(train.length()) +
                                     " does not match test series length " + std::to_string(test.length()));

    std::vector<long long> uniq;
    for (long long v : train.label_values) uniq.push_back(v);
    for (long long v : test.label_values) uniq.push_back(v);
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());

    RawDataset merged;
    merged.name = train.name;
    merged.label_values = uniq;
    merged.samples.resize(train.size() + test.size(), train.length());
    merged.samples.topRows(train.size()) = train.samples;
    merged.samples.bottomRows(test.size()) = test.samples;
    auto remap = [&uniq](const RawDataset& d, int local) {
        const long long original = d.label_values[static_cast<size_t>(local - 1)];
        const auto it = std::lower_bound(uniq.begin(), uniq.end(), original);
        return static_cast<int>(it - uniq.begin()) + 1;
    };
    for (int l : train.labels) merged.labels.push_back(remap(train, l));
    for (int l : test.labels) merged.labels.push_back(remap(test, l));
    return {std::move(merged), static_cast<int>(train.size())};
}

std::vector<std::vector<int>> make_kfold(int n, const std::vector<int>& labels, int k, uint64_t seed) {
    if (k < 1 || k > n)
        raise(ErrorKind::InvalidArgument, "make_kfold: k must satisfy 1 <= k <= n (k=" + std::to_string(k) +
                                              ", n=" + std::to_string(n) + ")");
    if (static_cast<int>(labels.size()) != n)
        raise(ErrorKind::Dimension, "make_kfold: labels length does not match n");

    std::map<int, std::vector<int>> by_class;
    for (int i = 0; i < n; ++i) by_class[labels[static_cast<size_t>(i)]].push_back(i);

    Rng rng = make_rng(seed, 0x666f6c64ULL); // "fold"
    std::vector<std::vector<int>> folds(static_cast<size_t>(k));
    int next_extra = 0; // rotates so overall fold sizes stay within one of each other
    for (auto& [cls, idx] : by_class) {
        std::shuffle(idx.begin(), idx.end(), rng);
        const int q = static_cast<int>(idx.size()) / k;
        const int r = static_cast<int>(idx.size()) % k;
        std::vector<int> take(static_cast<size_t>(k), q);
        for (int j = 0; j < r; ++j) ++take[static_cast<size_t>((next_extra + j) % k)];
        next_extra = (next_extra + r) % k;
        size_t pos = 0;
        for (int f = 0; f < k; ++f)
            for (int t = 0; t < take[static_cast<size_t>(f)]; ++t) folds[static_cast<size_t>(f)].push_back(idx[pos++]);
    }
    for (auto& f : folds) std::sort(f.begin(), f.end());
    return folds;
}

std::vector<std::pair<std::vector<int>, std::vector<int>>>
make_resamples(const std::vector<int>& labels, int n_train, int n_resamples, uint64_t seed) {
    const int n = static_cast<int>(labels.size());
    if (n_train < 1 || n_train >= n)
        raise(ErrorKind::InvalidArgument, "make_resamples: train size must split the data");
    if (n_resamples < 1) raise(ErrorKind::InvalidArgument, "make_resamples: need at least one resample");

    std::map<int, int> train_count;
    for (int i = 0; i < n_train; ++i) ++train_count[labels[static_cast<size_t>(i)]];
    std::map<int, std::vector<int>> by_class;
    for (int i = 0; i < n; ++i) by_class[labels[static_cast<size_t>(i)]].push_back(i);
    for (auto& [cls, cnt] : train_count)
        if (cnt > static_cast<int>(by_class[cls].size()))
            raise(ErrorKind::InvalidArgument, "make_resamples: infeasible per-class counts");

    std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
    out.reserve(static_cast<size_t>(n_resamples));

    // resample 0: the original split
    std::vector<int> tr0(static_cast<size_t>(n_train)), te0(static_cast<size_t>(n - n_train));
    std::iota(tr0.begin(), tr0.end(), 0);
    std::iota(te0.begin(), te0.end(), n_train);
    out.emplace_back(std::move(tr0), std::move(te0));

    for (int r = 1; r < n_resamples; ++r) {
        Rng rng = make_rng(seed, 0x7265736dULL, static_cast<uint64_t>(r)); // "resm"
        std::vector<int> tr, te;
        for (auto& [cls, idx] : by_class) {
            std::vector<int> pool = idx;
            std::shuffle(pool.begin(), pool.end(), rng);
            const int want = train_count.count(cls) ? train_count[cls] : 0;
            for (size_t p = 0; p < pool.size(); ++p)
                (static_cast<int>(p) < want ? tr : te).push_back(pool[p]);
        }
        std::sort(tr.begin(), tr.end());
        std::sort(te.begin(), te.end());
        out.emplace_back(std::move(tr), std::move(te));
    }
    return out;
}

void write_results(const std::vector<ResultRecord>& rows, const std::string& path) {
    if (rows.empty()) raise(ErrorKind::EmptyInput, "write_results: no records");

    bool write_header = true;
    {
        std::ifstream existing(path);
        std::string first;
        if (existing && std::getline(existing, first)) {
            if (!first.empty() && first.back() == '\r') first.pop_back();
            if (first != kResultsHeader)
                raise(ErrorKind::Format, "'" + path + "' exists with a different header");
            write_header = false;
        }
    }
    std::ofstream out(path, std::ios::app);
    if (!out) raise(ErrorKind::Io, "cannot open '" + path + "' for writing");
    if (write_header) out << kResultsHeader << '\n';
    for (const auto& r : rows) {
        char runtime[32];
        std::snprintf(runtime, sizeof(runtime), "%.6f", r.runtime_seconds);
        out << r.dataset << ',' << r.method << ',' << r.fold_id << ',' << format_double(r.accuracy) << ','
            << runtime << ',' << r.seed << ',' << r.config_hash << '\n';
    }
    if (!out) raise(ErrorKind::Io, "write failed for '" + path + "'");
}

std::vector<ResultRecord> read_results(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::Io, "cannot open '" + path + "' for reading");
    std::string line;
    if (!std::getline(in, line)) raise(ErrorKind::EmptyInput, "'" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kResultsHeader) raise(ErrorKind::Format, "'" + path + "': unexpected results header");

    std::vector<ResultRecord> rows;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split_line(line, ',');
        if (f.size() != 7)
            raise(ErrorKind::Format, path + ":" + std::to_string(line_no) + ": expected 7 fields");
        ResultRecord r;
        r.dataset = f[0];
        r.method = f[1];
        r.fold_id = f[2];
        r.accuracy = parse_number(f[3], path, line_no);
        r.runtime_seconds = parse_number(f[4], path, line_no);
        r.seed = static_cast<uint64_t>(std::stoull(f[5]));
        r.config_hash = f[6];
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string config_hash(const std::string& canonical) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace fcpca
