#include "citeco/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <nlohmann/json.hpp>

namespace citeco::ingest {

namespace {

using json = nlohmann::json;

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

// Trim plus collapse of internal whitespace runs to single spaces.
std::string fold_whitespace(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    bool in_space = false;
    for (unsigned char c : s) {
        if (std::isspace(c)) {
            in_space = !out.empty();
            continue;
        }
        if (in_space) out.push_back(' ');
        in_space = false;
        out.push_back(static_cast<char>(c));
    }
    return out;
}

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string fold_case_ws(const std::string& s) { return to_lower(fold_whitespace(s)); }

// Replace en dash, em dash, and minus sign (UTF-8) with '-'.
std::string normalize_dashes(const std::string& s) {
    static const std::vector<std::string> dashes = {"\xE2\x80\x93", "\xE2\x80\x94", "\xE2\x88\x92"};
    std::string out = s;
    for (const auto& d : dashes) {
        std::size_t pos = 0;
        while ((pos = out.find(d, pos)) != std::string::npos) {
            out.replace(pos, d.size(), "-");
            ++pos;
        }
    }
    return out;
}

// Page ranges become "start-end": dash variants unified, spaces around the
// dash removed.
std::string normalize_pages(const std::string& s) {
    std::string folded = fold_whitespace(normalize_dashes(s));
    std::string out;
    out.reserve(folded.size());
    for (std::size_t i = 0; i < folded.size(); ++i) {
        char c = folded[i];
        if (c == ' ' && ((i + 1 < folded.size() && folded[i + 1] == '-') ||
                         (!out.empty() && out.back() == '-'))) {
            continue;
        }
        out.push_back(c);
    }
    return out;
}

std::string title_case_word(const std::string& w) {
    std::string out = to_lower(w);
    for (char& c : out) {
        if (std::isalpha(static_cast<unsigned char>(c))) {
            c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            break;
        }
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    parts.push_back(current);
    return parts;
}

// First letter of every alphabetic run, as "J. B." style initials.
std::string initials_of(const std::string& given) {
    std::string out;
    bool in_run = false;
    for (unsigned char c : given) {
        if (std::isalpha(c)) {
            if (!in_run) {
                if (!out.empty()) out.push_back(' ');
                out.push_back(static_cast<char>(std::toupper(c)));
                out.push_back('.');
            }
            in_run = true;
        } else {
            in_run = false;
        }
    }
    return out;
}

// "J. B. Smith" and "smith, j.b." both become "Smith, J. B.".
std::string normalize_author(const std::string& raw) {
    std::string folded = fold_whitespace(raw);
    if (folded.empty()) return folded;

    std::string surname;
    std::string given;
    std::size_t comma = folded.find(',');
    if (comma != std::string::npos) {
        surname = trim(folded.substr(0, comma));
        given = trim(folded.substr(comma + 1));
    } else {
        std::size_t last_space = folded.rfind(' ');
        if (last_space == std::string::npos) {
            surname = folded;
        } else {
            surname = folded.substr(last_space + 1);
            given = folded.substr(0, last_space);
        }
    }

    std::string surname_out;
    for (const auto& part : split(surname, ' ')) {
        if (part.empty()) continue;
        if (!surname_out.empty()) surname_out.push_back(' ');
        surname_out += title_case_word(part);
    }

    std::string initials = initials_of(given);
    if (initials.empty()) return surname_out;
    return surname_out + ", " + initials;
}

constexpr int kMinYear = 1500;
constexpr int kMaxYear = 2100;

// Parses a year field; empty means absent, anything else must be an
// in-range integer.
bool parse_year(const std::string& text, std::optional<int>& out, std::string& error) {
    std::string t = trim(text);
    if (t.empty()) {
        out = std::nullopt;
        return true;
    }
    std::size_t consumed = 0;
    int value = 0;
    try {
        value = std::stoi(t, &consumed);
    } catch (const std::exception&) {
        error = "year is not an integer: \"" + t + "\"";
        return false;
    }
    if (consumed != t.size()) {
        error = "year is not an integer: \"" + t + "\"";
        return false;
    }
    if (value < kMinYear || value > kMaxYear) {
        error = "year out of range [1500, 2100]: " + std::to_string(value);
        return false;
    }
    out = value;
    return true;
}

const std::vector<std::string> kColumns = {"authors", "source",    "volume", "issue", "title",
                                           "pages",   "publisher", "year",   "external_key"};

bool looks_like_header(const std::vector<std::string>& fields) {
    return !fields.empty() && to_lower(trim(fields[0])) == "authors";
}

std::optional<RawRecord> record_from_fields(const std::vector<std::string>& fields,
                                            std::size_t row, std::vector<Issue>& issues) {
    if (fields.size() < 8 || fields.size() > 9) {
        issues.push_back(Issue::error(
            "expected 8 or 9 tab-separated columns, got " + std::to_string(fields.size()), row));
        return std::nullopt;
    }
    RawRecord r;
    for (const auto& author : split(fields[0], ';')) {
        std::string a = trim(author);
        if (!a.empty()) r.authors.push_back(a);
    }
    r.source = fields[1];
    r.volume = fields[2];
    r.issue = fields[3];
    r.title = fields[4];
    r.pages = fields[5];
    r.publisher = fields[6];

    std::string year_error;
    if (!parse_year(fields[7], r.year, year_error)) {
        issues.push_back(Issue::error(year_error, row));
        return std::nullopt;
    }
    if (fields.size() == 9 && !trim(fields[8]).empty()) {
        r.external_key = trim(fields[8]);
    }
    if (trim(r.title).empty()) {
        issues.push_back(Issue::error("title is empty", row));
        return std::nullopt;
    }
    return r;
}

ParseResult parse_tsv(std::istream& in) {
    ParseResult result;
    std::string line;
    std::size_t row = 0;
    bool first_data_line = true;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split(line, '\t');
        if (first_data_line && looks_like_header(fields)) {
            first_data_line = false;
            continue;
        }
        first_data_line = false;
        if (auto record = record_from_fields(fields, row, result.issues)) {
            result.records.push_back(std::move(*record));
        }
    }
    return result;
}

std::string json_string_field(const json& obj, const char* name) {
    if (!obj.contains(name) || obj[name].is_null()) return "";
    const json& v = obj[name];
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

std::optional<RawRecord> record_from_json(const json& obj, std::size_t row,
                                          std::vector<Issue>& issues) {
    if (!obj.is_object()) {
        issues.push_back(Issue::error("json line is not an object", row));
        return std::nullopt;
    }
    RawRecord r;
    if (obj.contains("authors") && obj["authors"].is_array()) {
        for (const auto& a : obj["authors"]) {
            if (a.is_string()) {
                std::string s = trim(a.get<std::string>());
                if (!s.empty()) r.authors.push_back(s);
            }
        }
    } else {
        for (const auto& author : split(json_string_field(obj, "authors"), ';')) {
            std::string a = trim(author);
            if (!a.empty()) r.authors.push_back(a);
        }
    }
    r.source = json_string_field(obj, "source");
    r.volume = json_string_field(obj, "volume");
    r.issue = json_string_field(obj, "issue");
    r.title = json_string_field(obj, "title");
    r.pages = json_string_field(obj, "pages");
    r.publisher = json_string_field(obj, "publisher");

    if (obj.contains("year") && !obj["year"].is_null()) {
        const json& y = obj["year"];
        if (y.is_number_integer()) {
            int value = y.get<int>();
            if (value < kMinYear || value > kMaxYear) {
                issues.push_back(Issue::error(
                    "year out of range [1500, 2100]: " + std::to_string(value), row));
                return std::nullopt;
            }
            r.year = value;
        } else if (y.is_string()) {
            std::string error;
            if (!parse_year(y.get<std::string>(), r.year, error)) {
                issues.push_back(Issue::error(error, row));
                return std::nullopt;
            }
        } else {
            issues.push_back(Issue::error("year is not an integer", row));
            return std::nullopt;
        }
    }
    std::string key = trim(json_string_field(obj, "external_key"));
    if (!key.empty()) r.external_key = key;

    if (trim(r.title).empty()) {
        issues.push_back(Issue::error("title is empty", row));
        return std::nullopt;
    }
    return r;
}

ParseResult parse_jsonl(std::istream& in) {
    ParseResult result;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        json obj = json::parse(line, nullptr, false);
        if (obj.is_discarded()) {
            result.issues.push_back(Issue::error("malformed json", row));
            continue;
        }
        if (auto record = record_from_json(obj, row, result.issues)) {
            result.records.push_back(std::move(*record));
        }
    }
    return result;
}

}  // namespace

ParseResult parse_records(std::istream& in, RecordFormat format) {
    switch (format) {
        case RecordFormat::Tsv:
            return parse_tsv(in);
        case RecordFormat::Jsonl:
            return parse_jsonl(in);
    }
    throw std::invalid_argument("unknown record format");
}

RawRecord normalize(RawRecord r) {
    for (auto& author : r.authors) {
        author = normalize_author(author);
    }
    r.source = fold_case_ws(r.source);
    r.volume = fold_whitespace(r.volume);
    r.issue = fold_whitespace(r.issue);
    r.title = fold_case_ws(r.title);
    r.pages = normalize_pages(r.pages);
    r.publisher = fold_case_ws(r.publisher);
    if (r.external_key) r.external_key = trim(*r.external_key);
    return r;
}

DedupKey dedup_key(const RawRecord& normalized) {
    // \x1f separates fields, \x1e separates authors; neither survives
    // whitespace folding inside a field.
    std::string value;
    for (std::size_t i = 0; i < normalized.authors.size(); ++i) {
        if (i > 0) value.push_back('\x1e');
        value += normalized.authors[i];
    }
    for (const std::string* field : {&normalized.source, &normalized.volume, &normalized.issue,
                                     &normalized.title, &normalized.pages, &normalized.publisher}) {
        value.push_back('\x1f');
        value += *field;
    }
    return DedupKey{std::move(value)};
}

BlindId BlindMap::insert(const DedupKey& key, CanonicalMeta meta) {
    BlindId id = static_cast<BlindId>(reverse_.size());
    forward_.emplace(key.value, id);
    by_key_hash_.emplace(key.hash_hex(), id);
    reverse_.push_back(std::move(meta));
    return id;
}

std::optional<BlindId> BlindMap::find(const DedupKey& key) const {
    auto it = forward_.find(key.value);
    if (it == forward_.end()) return std::nullopt;
    return it->second;
}

std::optional<BlindId> BlindMap::resolve(const std::string& token) const {
    if (auto it = by_external_key_.find(token); it != by_external_key_.end()) return it->second;
    if (auto it = by_key_hash_.find(token); it != by_key_hash_.end()) return it->second;
    return std::nullopt;
}

const CanonicalMeta& BlindMap::meta(BlindId id) const {
    return reverse_.at(static_cast<std::size_t>(id));
}

void BlindMap::register_external_key(const std::string& key, BlindId id,
                                     std::vector<Issue>& issues) {
    auto [it, inserted] = by_external_key_.emplace(key, id);
    if (!inserted && it->second != id) {
        issues.push_back(Issue::warning("external key \"" + key +
                                        "\" maps to multiple publications; keeping blind id " +
                                        std::to_string(it->second)));
    }
}

MergeResult merge_duplicates(const std::vector<RawRecord>& records) {
    struct Group {
        RawRecord representative;
        std::optional<int> year;
        std::size_t count = 0;
        std::vector<std::string> external_keys;
        bool year_conflict = false;
    };

    std::map<std::string, Group> groups;  // ordered: key-sorted blind id assignment
    for (const RawRecord& raw : records) {
        RawRecord norm = normalize(raw);
        DedupKey key = dedup_key(norm);
        Group& g = groups[key.value];
        if (g.count == 0) {
            g.representative = norm;
            g.year = norm.year;
        } else if (norm.year && g.year && *norm.year != *g.year) {
            g.year_conflict = true;
            g.year = std::min(*g.year, *norm.year);
        } else if (norm.year && !g.year) {
            g.year = norm.year;
        }
        if (norm.external_key) g.external_keys.push_back(*norm.external_key);
        ++g.count;
    }

    MergeResult result;
    for (auto& [key_value, group] : groups) {
        BlindId id = static_cast<BlindId>(result.records.size());

        CanonicalMeta meta;
        meta.key = DedupKey{key_value};
        meta.fields = group.representative;
        meta.fields.year = std::nullopt;
        meta.fields.external_key = std::nullopt;
        std::sort(group.external_keys.begin(), group.external_keys.end());
        group.external_keys.erase(
            std::unique(group.external_keys.begin(), group.external_keys.end()),
            group.external_keys.end());
        meta.external_keys = group.external_keys;

        BlindId assigned = result.map.insert(meta.key, std::move(meta));
        (void)assigned;
        for (const auto& ext : group.external_keys) {
            result.map.register_external_key(ext, id, result.issues);
        }

        result.records.push_back(CanonicalRecord{id, group.year, group.count});
        if (group.year_conflict) {
            result.issues.push_back(Issue::warning(
                "duplicates of blind id " + std::to_string(id) +
                " disagree on year; keeping earliest (" + std::to_string(*group.year) + ")"));
        }
        if (!group.year) {
            result.issues.push_back(Issue::warning(
                "blind id " + std::to_string(id) +
                " has no publication year; excluded from year-snapshot analyses"));
        }
    }
    return result;
}

EdgeLoadResult load_edges(std::istream& in, const BlindMap& map) {
    EdgeLoadResult result;
    std::string line;
    std::size_t row = 0;
    bool first_data_line = true;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split(line, '\t');
        if (first_data_line && fields.size() == 2 && to_lower(trim(fields[0])) == "citing" &&
            to_lower(trim(fields[1])) == "cited") {
            first_data_line = false;
            continue;
        }
        first_data_line = false;
        if (fields.size() != 2) {
            result.issues.push_back(Issue::error(
                "expected 2 tab-separated columns, got " + std::to_string(fields.size()), row));
            continue;
        }
        std::string citing_token = trim(fields[0]);
        std::string cited_token = trim(fields[1]);
        auto citing = map.resolve(citing_token);
        auto cited = map.resolve(cited_token);
        if (!citing || !cited) {
            std::string which = !citing ? citing_token : cited_token;
            result.issues.push_back(Issue::error("unresolvable endpoint \"" + which + "\"", row));
            continue;
        }
        if (*citing == *cited) {
            result.issues.push_back(
                Issue::warning("self-citation rejected: \"" + citing_token + "\"", row));
            continue;
        }
        result.edges.push_back(CitationEdge{*citing, *cited});
    }
    std::sort(result.edges.begin(), result.edges.end());
    result.edges.erase(std::unique(result.edges.begin(), result.edges.end()), result.edges.end());
    return result;
}

std::string issues_to_jsonl(const std::vector<Issue>& issues) {
    std::string out;
    for (const Issue& issue : issues) {
        json obj;
        obj["severity"] = issue.severity == Issue::Severity::Error ? "error" : "warning";
        if (issue.row) {
            obj["row"] = *issue.row;
        }
        obj["message"] = issue.message;
        out += obj.dump();
        out.push_back('\n');
    }
    return out;
}

}  // namespace citeco::ingest
