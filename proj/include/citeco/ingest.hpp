#pragma once

#include <compare>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "citeco/common.hpp"

namespace citeco::ingest {

enum class RecordFormat { Tsv, Jsonl };

// A bibliographic record as it appears in a dump, before normalization.
// Seven metadata fields plus year and an optional index-provided key.
struct RawRecord {
    std::vector<std::string> authors;
    std::string source;
    std::string volume;
    std::string issue;
    std::string title;
    std::string pages;
    std::string publisher;
    std::optional<int> year;
    std::optional<std::string> external_key;

    bool operator==(const RawRecord&) const = default;
};

struct ParseResult {
    std::vector<RawRecord> records;
    std::vector<Issue> issues;
};

// Reads records from a TSV dump (header: authors source volume issue title
// pages publisher year external_key, tab-separated; authors split on ';')
// or from json-lines with the same field names. Malformed rows become
// error issues carrying the 1-based line number; parsing continues.
ParseResult parse_records(std::istream& in, RecordFormat format);

// Mechanical cleanup: case-folded title/source/publisher, collapsed
// whitespace, authors as "Surname, F. M.", page ranges as "start-end".
// Total and idempotent.
RawRecord normalize(RawRecord r);

// Composite identity over the seven metadata fields of a normalized record.
// Equal keys mean the records are duplicates of one publication.
struct DedupKey {
    std::string value;

    auto operator<=>(const DedupKey&) const = default;

    // Stable digest usable as an endpoint token in edge files.
    std::string hash_hex() const { return to_hex16(fnv1a64(value)); }
};

DedupKey dedup_key(const RawRecord& normalized);

// A merged publication. Downstream analysis sees nothing but this.
struct CanonicalRecord {
    BlindId blind_id = kInvalidId;
    std::optional<int> year;
    std::size_t merged_from = 0;
};

// One representative metadata set per canonical record, kept apart from the
// analysis-facing store.
struct CanonicalMeta {
    DedupKey key;
    RawRecord fields;                        // normalized, year-free view
    std::vector<std::string> external_keys;  // every alias seen in the dump
};

// Bijection between dedup keys and blind ids, with resolution of edge-file
// endpoint tokens (external keys or dedup-key digests).
class BlindMap {
public:
    BlindId insert(const DedupKey& key, CanonicalMeta meta);

    std::optional<BlindId> find(const DedupKey& key) const;
    std::optional<BlindId> resolve(const std::string& token) const;
    const CanonicalMeta& meta(BlindId id) const;
    std::size_t size() const { return reverse_.size(); }

    void register_external_key(const std::string& key, BlindId id, std::vector<Issue>& issues);

private:
    std::map<std::string, BlindId> forward_;  // key value -> blind id
    std::vector<CanonicalMeta> reverse_;      // blind id -> metadata
    std::unordered_map<std::string, BlindId> by_external_key_;
    std::unordered_map<std::string, BlindId> by_key_hash_;
};

struct MergeResult {
    std::vector<CanonicalRecord> records;  // sorted by blind_id
    BlindMap map;
    std::vector<Issue> issues;
};

// Normalizes, groups by dedup key, and assigns blind ids densely from 0 in
// key-sorted order so the output is independent of dump ordering. Duplicate
// groups with conflicting years keep the earliest year and emit a warning.
MergeResult merge_duplicates(const std::vector<RawRecord>& records);

// A directed reference link: citing paper -> cited paper.
struct CitationEdge {
    BlindId citing = kInvalidId;
    BlindId cited = kInvalidId;

    auto operator<=>(const CitationEdge&) const = default;
};

struct EdgeLoadResult {
    std::vector<CitationEdge> edges;  // sorted, deduplicated
    std::vector<Issue> issues;
};

// Reads two-column delimited edges (citing <tab> cited) whose endpoints are
// external keys or dedup-key digests. Unresolvable endpoints and self-loops
// are reported per row and skipped.
EdgeLoadResult load_edges(std::istream& in, const BlindMap& map);

// Ingest report rows, one json object per issue.
std::string issues_to_jsonl(const std::vector<Issue>& issues);

}  // namespace citeco::ingest
