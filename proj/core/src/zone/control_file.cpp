#include "ddns/zone/control_file.hpp"

#include <algorithm>
#include <cctype>

namespace ddns::zone {

using nlohmann::json;

namespace {

std::string pointer_token(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

[[noreturn]] void schema_error(std::string path, std::string reason) {
    ControlFileError e(ControlFileError::Kind::schema, "schema error at '" + path + "': " + reason);
    e.path = std::move(path);
    e.reason = std::move(reason);
    throw e;
}

[[noreturn]] void validation_error(std::string label, std::string type, std::string reason, std::string detail = {}) {
    std::string msg = "validation error at " + label + (type.empty() ? "" : " " + type) + ": " + reason;
    if (!detail.empty()) msg += " (" + detail + ")";
    ControlFileError e(ControlFileError::Kind::validation, msg);
    e.label = std::move(label);
    e.type = std::move(type);
    e.reason = std::move(reason);
    e.path = std::move(detail);
    throw e;
}

bool dns_label(std::string_view l, bool allow_underscore) {
    if (l.empty() || l.size() > 63 || l.front() == '-' || l.back() == '-') return false;
    for (unsigned char c : l) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || (allow_underscore && c == '_');
        if (!ok) return false;
    }
    return true;
}

bool dotted(std::string_view name, bool allow_underscore, std::size_t min_labels) {
    if (name.empty() || name.size() > 253) return false;
    std::size_t labels = 0, pos = 0;
    while (true) {
        auto dot = name.find('.', pos);
        auto l = name.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
        if (!dns_label(l, allow_underscore)) return false;
        ++labels;
        if (dot == std::string_view::npos) break;
        pos = dot + 1;
    }
    return labels >= min_labels;
}

void check_rrsets(const std::string& label, const RecordSets& sets) {
    auto cname = sets.find(RecordType::CNAME);
    if (cname == sets.end()) return;
    if (label == "@") validation_error(label, "CNAME", "cname-at-apex");
    if (cname->second.size() != 1) validation_error(label, "CNAME", "multiple-cname");
    if (sets.size() != 1) validation_error(label, "CNAME", "cname-exclusive");
}

}  // namespace

bool valid_dns_name(std::string_view name) { return dotted(name, false, 2); }

bool valid_owner_label(std::string_view label) { return label == "@" || dotted(label, true, 1); }

ControlFile parse_control_file(std::string_view text) {
    if (text.size() > kMaxControlFileSize) schema_error("", "too-large");
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& ex) {
        ControlFileError e(ControlFileError::Kind::syntax, std::string("syntax error: ") + ex.what());
        e.position = ex.byte;
        e.reason = "syntax";
        throw e;
    }
    if (!doc.is_object()) schema_error("", "wrong-type");
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (it.key() != "version" && it.key() != "domain" && it.key() != "records")
            schema_error("/" + pointer_token(it.key()), "unknown-field");
    for (const char* k : {"version", "domain", "records"})
        if (!doc.contains(k)) schema_error(std::string("/") + k, "missing-field");

    ControlFile cf;
    if (!doc["version"].is_string() || doc["version"].get<std::string>() != kControlFileVersion)
        schema_error("/version", "bad-version");
    if (!doc["domain"].is_string() || !valid_dns_name(doc["domain"].get<std::string>()))
        schema_error("/domain", "bad-domain");
    cf.domain = doc["domain"].get<std::string>();

    const auto& recs = doc["records"];
    if (!recs.is_object()) schema_error("/records", "wrong-type");
    for (auto li = recs.begin(); li != recs.end(); ++li) {
        const std::string& label = li.key();
        std::string lpath = "/records/" + pointer_token(label);
        if (label.find('*') != std::string::npos) schema_error(lpath, "wildcard-unsupported");
        if (!valid_owner_label(label)) schema_error(lpath, "bad-label");
        if (label != "@" && label.size() + 1 + cf.domain.size() > 253) schema_error(lpath, "bad-label");
        if (!li->is_object()) schema_error(lpath, "wrong-type");
        RecordSets sets;
        for (auto ti = li->begin(); ti != li->end(); ++ti) {
            std::string tpath = lpath + "/" + pointer_token(ti.key());
            auto type = type_from_name(ti.key());
            if (!type) {
                ControlFileError e(ControlFileError::Kind::schema, "unknown record type '" + ti.key() + "' at " + tpath);
                e.path = tpath;
                e.type = ti.key();
                e.reason = "unknown-type";
                throw e;
            }
            if (!ti->is_array()) schema_error(tpath, "wrong-type");
            if (ti->empty()) schema_error(tpath, "empty-rrset");
            auto& out = sets[*type];
            for (std::size_t i = 0; i < ti->size(); ++i) {
                auto rep = validate_record(*type, (*ti)[i]);
                if (!rep.ok()) {
                    const auto& is = rep.issues.front();
                    validation_error(label, ti.key(), is.reason, tpath + "/" + std::to_string(i) + "/" + is.field);
                }
                out.push_back(std::move(*rep.entry));
            }
        }
        check_rrsets(label, sets);
        cf.records.emplace(label, std::move(sets));
    }
    return cf;
}

ControlFile parse_control_file(ByteView bytes) {
    return parse_control_file(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

std::string serialize_canonical(const ControlFile& cf) {
    json records = json::object();
    for (const auto& [label, sets] : cf.records) {
        json types = json::object();
        for (const auto& [type, entries] : sets) {
            json arr = json::array();
            for (const auto& e : entries) arr.push_back(record_to_json(e));
            types[std::string(type_name(type))] = std::move(arr);
        }
        records[label] = std::move(types);
    }
    json doc = {{"version", cf.version}, {"domain", cf.domain}, {"records", std::move(records)}};
    return doc.dump(-1, ' ', false, json::error_handler_t::strict);
}

void validate_control_file(const ControlFile& cf) {
    // Re-parsing the canonical form applies every rule in one place.
    auto text = serialize_canonical(cf);
    if (parse_control_file(text) != cf) schema_error("", "not-canonical");
}

std::vector<RecordEntry> query_records(const ControlFile& cf, std::string_view label, RecordType type) {
    auto li = cf.records.find(std::string(label));
    if (li == cf.records.end()) return {};
    auto ti = li->second.find(type);
    if (ti != li->second.end()) return ti->second;
    auto cn = li->second.find(RecordType::CNAME);
    if (cn != li->second.end()) return cn->second;
    return {};
}

std::optional<std::string> label_for(const ControlFile& cf, std::string_view qname) {
    std::string q(qname);
    if (!q.empty() && q.back() == '.') q.pop_back();
    std::transform(q.begin(), q.end(), q.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (q == cf.domain) return "@";
    if (q.size() > cf.domain.size() + 1 && q.ends_with(cf.domain) && q[q.size() - cf.domain.size() - 1] == '.')
        return q.substr(0, q.size() - cf.domain.size() - 1);
    return std::nullopt;
}

}  // namespace ddns::zone
