#include <zlib.h>

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "ragsearch/errors.hpp"
#include "ragsearch/index.hpp"

namespace ragsearch {

namespace {

using nlohmann::json;

constexpr char kMagic[8] = {'R', 'A', 'G', 'I', 'D', 'X', '0', '1'};
constexpr int kFormatVersion = 1;

void append_u64_le(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t read_u64_le(const std::string& data, std::size_t pos) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data[pos + i])) << (8 * i);
    }
    return v;
}

std::uint32_t payload_crc32(const std::string& payload) {
    uLong crc = ::crc32(0L, Z_NULL, 0);
    crc = ::crc32(crc, reinterpret_cast<const Bytef*>(payload.data()),
                  static_cast<uInt>(payload.size()));
    return static_cast<std::uint32_t>(crc);
}

void append_section(std::string& out, const std::string& body) {
    append_u64_le(out, body.size());
    out.append(body);
}

std::string documents_section(const IndexSnapshot& snapshot) {
    std::string out;
    for (doc_id_t id = 0; id < snapshot.n_docs(); ++id) {
        const StoredDocument& doc = snapshot.doc(id);
        json record = {
            {"id", doc.doc_id},
            {"ext", doc.external_id},
            {"title", doc.title},
            {"body", doc.body},
            {"len", doc.length_tokens},
        };
        out.append(record.dump());
        out.push_back('\n');
    }
    return out;
}

std::string postings_section(const IndexSnapshot& snapshot) {
    std::string out;
    // std::map iteration: term order, which keeps the file deterministic.
    for (const auto& [term, postings] : snapshot.postings()) {
        json entries = json::array();
        for (const Posting& p : postings) {
            entries.push_back(json::array({p.doc_id, p.term_frequency}));
        }
        json record = {{"t", term}, {"p", std::move(entries)}};
        out.append(record.dump());
        out.push_back('\n');
    }
    return out;
}

std::string stats_section(const IndexSnapshot& snapshot) {
    const AnalyzerConfig& analyzer = snapshot.analyzer();
    json record = {
        {"format_version", kFormatVersion},
        {"n_docs", snapshot.stats().n_docs},
        {"total_tokens", snapshot.stats().total_tokens},
        {"avgdl", snapshot.stats().avgdl},
        {"titles_indexed", snapshot.titles_indexed()},
        {"analyzer",
         {
             {"lowercase", analyzer.lowercase},
             {"strip_html", analyzer.strip_html},
             {"stopwords", analyzer.stopwords},
         }},
    };
    std::string out = record.dump();
    out.push_back('\n');
    return out;
}

json parse_record(const std::string& line, const char* section) {
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded()) {
        throw FormatError(std::string("corrupt ") + section + " record in index file");
    }
    return record;
}

std::vector<std::string> split_lines(const std::string& body) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < body.size()) {
        std::size_t end = body.find('\n', start);
        if (end == std::string::npos) end = body.size();
        if (end > start) lines.push_back(body.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

}  // namespace

void persist(const IndexSnapshot& snapshot, const std::string& path) {
    std::string payload;
    append_section(payload, documents_section(snapshot));
    append_section(payload, postings_section(snapshot));
    append_section(payload, stats_section(snapshot));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(kMagic, sizeof(kMagic));
    std::string header;
    append_u64_le(header, payload_crc32(payload));
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

IndexSnapshot load_index(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open index file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("read failed: " + path);
    std::string data = buffer.str();

    if (data.size() < sizeof(kMagic) + 8 ||
        data.compare(0, sizeof(kMagic), kMagic, sizeof(kMagic)) != 0) {
        throw FormatError("not an index file (bad magic): " + path);
    }
    std::uint64_t stored_crc = read_u64_le(data, sizeof(kMagic));
    std::string payload = data.substr(sizeof(kMagic) + 8);
    if (stored_crc != payload_crc32(payload)) {
        throw FormatError("checksum mismatch (corrupted index): " + path);
    }

    std::string sections[3];
    std::size_t pos = 0;
    for (std::string& section : sections) {
        if (pos + 8 > payload.size()) throw FormatError("truncated index file: " + path);
        std::uint64_t len = read_u64_le(payload, pos);
        pos += 8;
        if (pos + len > payload.size()) throw FormatError("truncated index file: " + path);
        section = payload.substr(pos, len);
        pos += len;
    }
    if (pos != payload.size()) throw FormatError("trailing bytes in index file: " + path);

    try {
        detail::SnapshotData snapshot_data;

        json stats = parse_record(sections[2], "stats");
        if (stats.at("format_version").get<int>() != kFormatVersion) {
            throw FormatError("unsupported index format version");
        }
        snapshot_data.titles_indexed = stats.at("titles_indexed").get<bool>();
        const json& analyzer = stats.at("analyzer");
        snapshot_data.analyzer.lowercase = analyzer.at("lowercase").get<bool>();
        snapshot_data.analyzer.strip_html = analyzer.at("strip_html").get<bool>();
        snapshot_data.analyzer.stopwords =
            analyzer.at("stopwords").get<std::set<std::string>>();

        auto expected_docs = stats.at("n_docs").get<std::size_t>();
        for (const std::string& line : split_lines(sections[0])) {
            json record = parse_record(line, "document");
            StoredDocument doc;
            doc.doc_id = record.at("id").get<doc_id_t>();
            doc.external_id = record.at("ext").get<std::string>();
            doc.title = record.at("title").get<std::string>();
            doc.body = record.at("body").get<std::string>();
            doc.length_tokens = record.at("len").get<std::uint32_t>();
            if (doc.doc_id != snapshot_data.docs.size()) {
                throw FormatError("document ids not dense in index file");
            }
            snapshot_data.docs.push_back(std::move(doc));
        }
        if (snapshot_data.docs.size() != expected_docs) {
            throw FormatError("document count does not match stats section");
        }

        for (const std::string& line : split_lines(sections[1])) {
            json record = parse_record(line, "postings");
            PostingsList list;
            for (const json& entry : record.at("p")) {
                Posting posting{entry.at(0).get<doc_id_t>(), entry.at(1).get<std::uint32_t>()};
                if (posting.term_frequency == 0 || posting.doc_id >= snapshot_data.docs.size() ||
                    (!list.empty() && posting.doc_id <= list.back().doc_id)) {
                    throw FormatError("invalid postings list in index file");
                }
                list.push_back(posting);
            }
            snapshot_data.postings.emplace(record.at("t").get<std::string>(), std::move(list));
        }

        return IndexSnapshot(std::move(snapshot_data));
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed index record: ") + e.what());
    }
}

}  // namespace ragsearch
