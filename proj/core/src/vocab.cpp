#include "amsum/vocab.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "amsum/corpus.hpp"
#include "amsum/errors.hpp"
#include "amsum/text.hpp"

namespace amsum {

Vocabulary::Vocabulary() {
    id_to_token_ = {kPadToken, kUnkToken, kStartToken, kStopToken};
    counts_ = {0, 0, 0, 0};
    for (int i = 0; i < kNumReserved; ++i) token_to_id_[id_to_token_[i]] = i;
}

Vocabulary Vocabulary::from_counted(
    std::vector<std::pair<std::string, std::int64_t>> entries) {
    Vocabulary v;
    for (auto& [token, count] : entries) {
        if (v.token_to_id_.count(token)) {
            throw ArgumentError("Vocabulary: duplicate token '" + token + "'");
        }
        v.token_to_id_[token] = static_cast<int>(v.id_to_token_.size());
        v.id_to_token_.push_back(token);
        v.counts_.push_back(count);
    }
    return v;
}

int Vocabulary::id_of(const std::string& token) const {
    auto it = token_to_id_.find(token);
    return it == token_to_id_.end() ? kUnkId : it->second;
}

bool Vocabulary::contains(const std::string& token) const {
    return token_to_id_.count(token) != 0;
}

const std::string& Vocabulary::token_of(int id) const {
    if (id < 0 || id >= size()) {
        std::ostringstream os;
        os << "Vocabulary: id " << id << " out of range [0, " << size() << ")";
        throw IndexError(os.str());
    }
    return id_to_token_[static_cast<std::size_t>(id)];
}

std::int64_t Vocabulary::count_of(const std::string& token) const {
    auto it = token_to_id_.find(token);
    if (it == token_to_id_.end()) return 0;
    return counts_[static_cast<std::size_t>(it->second)];
}

const std::string& Vocabulary::surface(int id, const std::vector<std::string>& oov_tokens) const {
    if (id >= 0 && id < size()) return id_to_token_[static_cast<std::size_t>(id)];
    const int k = id - size();
    if (k >= 0 && k < static_cast<int>(oov_tokens.size())) {
        return oov_tokens[static_cast<std::size_t>(k)];
    }
    std::ostringstream os;
    os << "Vocabulary: extended id " << id << " out of range for vocab " << size() << " + "
       << oov_tokens.size() << " OOVs";
    throw IndexError(os.str());
}

std::vector<std::int64_t> Vocabulary::id_counts() const { return counts_; }

void Vocabulary::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open vocabulary file for writing: " + path);
    out << "#vocab " << size() << "\n";
    for (int id = kNumReserved; id < size(); ++id) {
        out << id_to_token_[static_cast<std::size_t>(id)] << '\t'
            << counts_[static_cast<std::size_t>(id)] << '\n';
    }
    if (!out) throw IoError("failed writing vocabulary file: " + path);
}

Vocabulary Vocabulary::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open vocabulary file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw FormatError(path + ":1: empty vocabulary file");
    std::istringstream header(line);
    std::string tag;
    int declared = 0;
    header >> tag >> declared;
    if (tag != "#vocab" || declared < kNumReserved) {
        throw FormatError(path + ":1: expected header '#vocab <size>'");
    }
    std::vector<std::pair<std::string, std::int64_t>> entries;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            std::ostringstream os;
            os << path << ":" << lineno << ": expected 'token<TAB>count'";
            throw FormatError(os.str());
        }
        const std::string token = line.substr(0, tab);
        std::int64_t count = 0;
        try {
            count = std::stoll(line.substr(tab + 1));
        } catch (const std::exception&) {
            std::ostringstream os;
            os << path << ":" << lineno << ": bad count field";
            throw FormatError(os.str());
        }
        entries.emplace_back(token, count);
    }
    Vocabulary v = from_counted(std::move(entries));
    if (v.size() != declared) {
        std::ostringstream os;
        os << path << ": header declares size " << declared << " but file holds " << v.size();
        throw FormatError(os.str());
    }
    return v;
}

Vocabulary build_vocabulary(const std::vector<RawExample>& corpus, int max_size, int min_count) {
    if (max_size < 5) throw ArgumentError("build_vocabulary: max_size must be at least 5");
    if (corpus.empty()) throw CorpusError("build_vocabulary: empty corpus");
    // std::map keys are already in lexicographic (byte) order, which settles
    // ties deterministically below.
    std::map<std::string, std::int64_t> counts;
    for (const RawExample& ex : corpus) {
        for (const std::string& tok : tokenize(ex.article)) ++counts[tok];
        for (const std::string& tok : tokenize(ex.title)) ++counts[tok];
    }
    std::vector<std::pair<std::string, std::int64_t>> entries;
    entries.reserve(counts.size());
    for (auto& [token, count] : counts) {
        if (count >= min_count) entries.emplace_back(token, count);
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    const std::size_t capacity = static_cast<std::size_t>(max_size - kNumReserved);
    if (entries.size() > capacity) entries.resize(capacity);
    return Vocabulary::from_counted(std::move(entries));
}

}  // namespace amsum
