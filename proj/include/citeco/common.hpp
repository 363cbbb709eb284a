#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace citeco {

// Opaque record identifier. Dense from 0 within a corpus, assigned by the
// ingest stage so that every later stage is blind to publication metadata.
using BlindId = std::int64_t;

constexpr BlindId kInvalidId = -1;

// One diagnostic produced while ingesting or analyzing. Rows are 1-based
// input line numbers where applicable.
struct Issue {
    enum class Severity { Warning, Error };

    Severity severity = Severity::Warning;
    std::optional<std::size_t> row;
    std::string message;

    static Issue warning(std::string msg, std::optional<std::size_t> row = std::nullopt) {
        return Issue{Severity::Warning, row, std::move(msg)};
    }
    static Issue error(std::string msg, std::optional<std::size_t> row = std::nullopt) {
        return Issue{Severity::Error, row, std::move(msg)};
    }
};

// 64-bit FNV-1a. Used for stable dedup-key digests that can appear in
// interchange files.
std::uint64_t fnv1a64(const std::string& data);

// Lowercase hex, zero-padded to 16 characters.
std::string to_hex16(std::uint64_t value);

// Fixed 12-significant-digit decimal formatting for CSV output. The same
// bytes come out for the same double on every run.
std::string format_double(double value);

// Whole-file atomic write: content goes to a sibling temp file which is then
// renamed over the target.
void atomic_write_file(const std::filesystem::path& target, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace citeco
