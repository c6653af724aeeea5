#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ontoline/csv.hpp"
#include "ontoline/error.hpp"
#include "ontoline/fixed.hpp"
#include "ontoline/xml.hpp"

// Requirement management: EARS sentence classification, quantitative
// constraint extraction, CSV import, ReqIF export/import and verification
// state tracking.

namespace ontoline::reqmodel {

inline constexpr const char* kModule = "reqmodel";

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

enum class EarsPattern { Ubiquitous, EventDriven, StateDriven, Optional, Unwanted, Complex };

enum class ClauseKind { Trigger, State, Feature, Condition };

enum class VerificationState { Unverified, Passed, Failed };

enum class Metric { LeadTime, AutomationRatio, Utilization, ErgonomicScore };

enum class Comparator { LessEqual, GreaterEqual, Equal };

struct Clause {
    ClauseKind kind;
    std::string text;
    friend bool operator==(const Clause&, const Clause&) = default;
};

struct MetricConstraint {
    Metric metric;
    Comparator comparator;
    Fixed3 threshold;
    std::string unit;  // "minutes" for durations, "" for dimensionless ratios
    friend bool operator==(const MetricConstraint&, const MetricConstraint&) = default;
};

struct Requirement {
    std::string id;
    std::string raw_text;
    EarsPattern pattern = EarsPattern::Ubiquitous;
    std::string system_name;
    std::string response;
    std::vector<Clause> clauses;
    std::optional<MetricConstraint> constraint;
    VerificationState verification = VerificationState::Unverified;
    std::vector<std::string> trace_links;
    std::vector<std::string> audit;  // verification evidence, append-only
};

struct RequirementSet {
    std::vector<Requirement> requirements;
    std::string title;
    std::string creation_time;  // fixed string, keeps exports deterministic

    const Requirement* find(std::string_view id) const {
        for (const auto& r : requirements)
            if (r.id == id) return &r;
        return nullptr;
    }
};

// ---------------------------------------------------------------------------
// Enum <-> string
// ---------------------------------------------------------------------------

inline std::string to_string(EarsPattern p) {
    switch (p) {
        case EarsPattern::Ubiquitous: return "Ubiquitous";
        case EarsPattern::EventDriven: return "EventDriven";
        case EarsPattern::StateDriven: return "StateDriven";
        case EarsPattern::Optional: return "Optional";
        case EarsPattern::Unwanted: return "Unwanted";
        case EarsPattern::Complex: return "Complex";
    }
    return "?";
}

inline std::optional<EarsPattern> pattern_from_string(std::string_view s) {
    if (s == "Ubiquitous") return EarsPattern::Ubiquitous;
    if (s == "EventDriven") return EarsPattern::EventDriven;
    if (s == "StateDriven") return EarsPattern::StateDriven;
    if (s == "Optional") return EarsPattern::Optional;
    if (s == "Unwanted") return EarsPattern::Unwanted;
    if (s == "Complex") return EarsPattern::Complex;
    return std::nullopt;
}

inline std::string to_string(VerificationState v) {
    switch (v) {
        case VerificationState::Unverified: return "Unverified";
        case VerificationState::Passed: return "Passed";
        case VerificationState::Failed: return "Failed";
    }
    return "?";
}

inline std::optional<VerificationState> verification_from_string(std::string_view s) {
    if (s == "Unverified") return VerificationState::Unverified;
    if (s == "Passed") return VerificationState::Passed;
    if (s == "Failed") return VerificationState::Failed;
    return std::nullopt;
}

inline std::string to_string(Metric m) {
    switch (m) {
        case Metric::LeadTime: return "lead_time";
        case Metric::AutomationRatio: return "automation_ratio";
        case Metric::Utilization: return "utilization";
        case Metric::ErgonomicScore: return "ergonomic_score";
    }
    return "?";
}

inline std::optional<Metric> metric_from_string(std::string_view s) {
    if (s == "lead_time") return Metric::LeadTime;
    if (s == "automation_ratio") return Metric::AutomationRatio;
    if (s == "utilization") return Metric::Utilization;
    if (s == "ergonomic_score") return Metric::ErgonomicScore;
    return std::nullopt;
}

inline std::string to_string(Comparator c) {
    switch (c) {
        case Comparator::LessEqual: return "<=";
        case Comparator::GreaterEqual: return ">=";
        case Comparator::Equal: return "=";
    }
    return "?";
}

inline std::optional<Comparator> comparator_from_string(std::string_view s) {
    if (s == "<=") return Comparator::LessEqual;
    if (s == ">=") return Comparator::GreaterEqual;
    if (s == "=") return Comparator::Equal;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// EARS parsing
// ---------------------------------------------------------------------------

struct ParsedEars {
    EarsPattern pattern;
    std::string system_name;
    std::string response;
    std::vector<Clause> clauses;
};

namespace detail {

inline std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::string first_word_lower(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != ',') ++i;
    return lower(s.substr(0, i));
}

inline bool contains_word(std::string_view haystack, std::string_view word) {
    std::string low = lower(haystack);
    std::string w = lower(word);
    std::size_t pos = 0;
    while ((pos = low.find(w, pos)) != std::string::npos) {
        bool left_ok = pos == 0 || !std::isalnum(static_cast<unsigned char>(low[pos - 1]));
        std::size_t end = pos + w.size();
        bool right_ok = end >= low.size() || !std::isalnum(static_cast<unsigned char>(low[end]));
        if (left_ok && right_ok) return true;
        ++pos;
    }
    return false;
}

inline std::optional<ClauseKind> clause_kind_for(std::string_view keyword) {
    if (keyword == "when") return ClauseKind::Trigger;
    if (keyword == "while") return ClauseKind::State;
    if (keyword == "where") return ClauseKind::Feature;
    if (keyword == "if") return ClauseKind::Condition;
    return std::nullopt;
}

}  // namespace detail

// Keyword-anchored EARS grammar. Leading clauses are introduced by
// When/While/Where/If (case-insensitive) and terminated by a comma; an If
// clause in final position requires "then" before the main part. The main
// part is "the <system> shall <response>". Zero clauses is Ubiquitous, one
// classifies by keyword, two is Complex, more than two is rejected.
inline ParsedEars parse_ears(std::string_view text) {
    using detail::clause_kind_for;
    using detail::first_word_lower;
    using detail::lower;
    using detail::trim;

    std::string_view s = trim(text);
    if (s.empty()) raise(kModule, "MalformedClause", "empty requirement text");
    if (!detail::contains_word(s, "shall"))
        raise(kModule, "NoShallClause", "requirement lacks a 'shall' clause: " + std::string(s));
    if (s.back() != '.')
        raise(kModule, "MalformedClause", "requirement must end with '.'");
    s.remove_suffix(1);
    s = trim(s);

    std::vector<Clause> clauses;
    for (;;) {
        std::string word = first_word_lower(s);
        auto kind = clause_kind_for(word);
        if (!kind) break;
        if (clauses.size() == 2)
            raise(kModule, "MalformedClause",
                  "more than two leading keyword clauses are not supported");
        std::string_view rest = trim(s.substr(word.size()));
        std::size_t comma = rest.find(',');
        if (comma == std::string_view::npos)
            raise(kModule, "MalformedClause",
                  "keyword '" + word + "' clause is missing its terminating comma");
        std::string clause_text(trim(rest.substr(0, comma)));
        if (clause_text.empty())
            raise(kModule, "MalformedClause", "empty '" + word + "' clause");
        clauses.push_back({*kind, clause_text});
        s = trim(rest.substr(comma + 1));
        if (*kind == ClauseKind::Condition) {
            // "If <condition>, then the <s> shall <r>." — unless another
            // keyword clause follows immediately.
            if (!clause_kind_for(first_word_lower(s))) {
                std::string next = first_word_lower(s);
                if (next != "then")
                    raise(kModule, "MalformedClause", "'if' clause requires 'then'");
                s = trim(s.substr(4));
            }
        }
    }

    std::string article = first_word_lower(s);
    if (article != "the")
        raise(kModule, "MalformedClause", "expected 'the <system> shall <response>'");
    s = trim(s.substr(3));

    // System name runs up to the first standalone "shall".
    std::string low = lower(s);
    std::size_t shall_pos = std::string::npos;
    std::size_t search = 0;
    while ((search = low.find("shall", search)) != std::string::npos) {
        bool left_ok = search == 0 || std::isspace(static_cast<unsigned char>(low[search - 1]));
        std::size_t end = search + 5;
        bool right_ok = end >= low.size() || std::isspace(static_cast<unsigned char>(low[end]));
        if (left_ok && right_ok) {
            shall_pos = search;
            break;
        }
        ++search;
    }
    if (shall_pos == std::string::npos)
        raise(kModule, "MalformedClause", "no 'shall' after the system name");
    std::string system(trim(s.substr(0, shall_pos)));
    std::string response(trim(s.substr(shall_pos + 5)));
    if (system.empty()) raise(kModule, "MalformedClause", "empty system name");
    if (response.empty()) raise(kModule, "MalformedClause", "empty response");

    EarsPattern pattern;
    if (clauses.empty()) {
        pattern = EarsPattern::Ubiquitous;
    } else if (clauses.size() == 2) {
        pattern = EarsPattern::Complex;
    } else {
        switch (clauses.front().kind) {
            case ClauseKind::Trigger: pattern = EarsPattern::EventDriven; break;
            case ClauseKind::State: pattern = EarsPattern::StateDriven; break;
            case ClauseKind::Feature: pattern = EarsPattern::Optional; break;
            case ClauseKind::Condition: pattern = EarsPattern::Unwanted; break;
            default: pattern = EarsPattern::Ubiquitous;
        }
    }
    return {pattern, system, response, clauses};
}

// ---------------------------------------------------------------------------
// Constraint extraction
// ---------------------------------------------------------------------------

namespace detail {

inline std::optional<Metric> metric_synonym(std::string_view raw) {
    std::string key = lower(raw);
    for (char& c : key)
        if (c == '-' || c == ' ') c = '_';
    return metric_from_string(key);
}

inline bool is_duration_metric(Metric m) { return m == Metric::LeadTime; }

}  // namespace detail

// Scans a response for "<achieve|have|keep> a <metric> of <at most|at least|
// exactly> <number> [unit]". Thresholds are kept at 0.001 resolution so that
// verification against integer-scaled minutes stays exact.
inline std::optional<MetricConstraint> extract_constraint(std::string_view response) {
    using detail::lower;
    using detail::trim;

    std::string low = lower(response);
    static constexpr std::string_view kVerbs[] = {"achieve an ", "achieve a ", "have an ",
                                                  "have a ",     "keep an ",   "keep a "};
    // Earliest verb occurrence wins; at equal positions the longer article
    // form wins ("achieve a " is a prefix of "achieve an ").
    std::size_t verb_pos = std::string::npos;
    std::size_t metric_start = std::string::npos;
    for (std::string_view verb : kVerbs) {
        std::size_t pos = 0;
        while ((pos = low.find(verb, pos)) != std::string::npos) {
            bool left_ok = pos == 0 || !std::isalnum(static_cast<unsigned char>(low[pos - 1]));
            if (left_ok) {
                if (pos < verb_pos) {
                    verb_pos = pos;
                    metric_start = pos + verb.size();
                } else if (pos == verb_pos && pos + verb.size() > metric_start) {
                    metric_start = pos + verb.size();
                }
                break;
            }
            ++pos;
        }
    }
    if (metric_start == std::string::npos) return std::nullopt;

    std::size_t of_pos = low.find(" of ", metric_start);
    if (of_pos == std::string::npos) return std::nullopt;
    std::string metric_text(trim(std::string_view(response).substr(metric_start, of_pos - metric_start)));

    std::string_view after = std::string_view(low).substr(of_pos + 4);
    std::size_t after_offset = of_pos + 4;
    Comparator cmp;
    std::size_t number_start;
    if (after.starts_with("at most ")) {
        cmp = Comparator::LessEqual;
        number_start = after_offset + 8;
    } else if (after.starts_with("at least ")) {
        cmp = Comparator::GreaterEqual;
        number_start = after_offset + 9;
    } else if (after.starts_with("exactly ")) {
        cmp = Comparator::Equal;
        number_start = after_offset + 8;
    } else {
        return std::nullopt;
    }

    std::size_t number_end = number_start;
    while (number_end < response.size() &&
           (std::isdigit(static_cast<unsigned char>(response[number_end])) ||
            response[number_end] == '.'))
        ++number_end;
    auto threshold = Fixed3::parse(response.substr(number_start, number_end - number_start));
    if (!threshold) return std::nullopt;

    // Everything matched; from here on a bad metric or unit is an error.
    auto metric = detail::metric_synonym(metric_text);
    if (!metric)
        raise(kModule, "UnknownMetric", "'" + metric_text + "' is not a known metric");

    std::string unit(trim(std::string_view(response).substr(number_end)));
    if (detail::is_duration_metric(*metric)) {
        if (lower(unit) != "minutes")
            raise(kModule, "UnknownUnit",
                  "metric " + to_string(*metric) + " requires unit 'minutes', got '" + unit + "'");
        unit = "minutes";
    } else {
        if (!unit.empty())
            raise(kModule, "UnknownUnit",
                  "metric " + to_string(*metric) + " is dimensionless, got unit '" + unit + "'");
    }
    return MetricConstraint{*metric, cmp, *threshold, unit};
}

inline std::string constraint_to_string(const MetricConstraint& c) {
    std::string out = to_string(c.metric) + " " + to_string(c.comparator) + " " + c.threshold.str();
    if (!c.unit.empty()) out += " " + c.unit;
    return out;
}

inline std::optional<MetricConstraint> constraint_from_string(std::string_view text) {
    auto s = detail::trim(text);
    if (s.empty()) return std::nullopt;
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == ' ') {
            if (i > start) parts.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    if (parts.size() != 3 && parts.size() != 4)
        raise(kModule, "SchemaViolation", "malformed constraint '" + std::string(s) + "'");
    auto metric = metric_from_string(parts[0]);
    auto cmp = comparator_from_string(parts[1]);
    auto threshold = Fixed3::parse(parts[2]);
    if (!metric || !cmp || !threshold)
        raise(kModule, "SchemaViolation", "malformed constraint '" + std::string(s) + "'");
    std::string unit = parts.size() == 4 ? parts[3] : "";
    return MetricConstraint{*metric, *cmp, *threshold, unit};
}

// ---------------------------------------------------------------------------
// CSV import
// ---------------------------------------------------------------------------

// Expects header `id,text,trace_links`; trace_links is ';'-separated.
inline RequirementSet import_requirements(std::string_view csv_content,
                                          std::string title = "Imported requirements",
                                          std::string creation_time = "1970-01-01T00:00:00Z") {
    auto rows = csv::parse(csv_content);
    if (rows.empty())
        raise(kModule, "ParseError", "CSV is empty, expected header id,text,trace_links");
    const auto& header = rows.front();
    if (header.size() < 3 || header[0] != "id" || header[1] != "text" ||
        header[2] != "trace_links")
        raise(kModule, "ParseError", "CSV header must be id,text,trace_links");

    RequirementSet set;
    set.title = std::move(title);
    set.creation_time = std::move(creation_time);
    std::set<std::string> seen;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() < 2)
            raise(kModule, "ParseError", "row " + std::to_string(i) + " has too few fields");
        Requirement req;
        req.id = std::string(detail::trim(row[0]));
        if (req.id.empty())
            raise(kModule, "ParseError", "row " + std::to_string(i) + " has an empty id");
        if (!seen.insert(req.id).second)
            raise(kModule, "DuplicateId", "requirement id '" + req.id + "' appears twice");
        req.raw_text = std::string(detail::trim(row[1]));
        try {
            ParsedEars parsed = parse_ears(req.raw_text);
            req.pattern = parsed.pattern;
            req.system_name = parsed.system_name;
            req.response = parsed.response;
            req.clauses = parsed.clauses;
            req.constraint = extract_constraint(req.response);
        } catch (const Error& e) {
            raise(kModule, "ParseError",
                  "row " + std::to_string(i) + " (id " + req.id + "): " + e.what());
        }
        if (row.size() > 2) {
            std::string_view links = row[2];
            std::size_t pos = 0;
            while (pos <= links.size()) {
                std::size_t semi = links.find(';', pos);
                std::string_view item =
                    links.substr(pos, semi == std::string_view::npos ? links.size() - pos
                                                                     : semi - pos);
                item = detail::trim(item);
                if (!item.empty()) req.trace_links.emplace_back(item);
                if (semi == std::string_view::npos) break;
                pos = semi + 1;
            }
        }
        set.requirements.push_back(std::move(req));
    }
    return set;
}

inline std::string export_csv(const RequirementSet& set) {
    std::vector<csv::Row> rows;
    rows.push_back({"id", "text", "trace_links"});
    for (const auto& r : set.requirements) {
        std::string links;
        for (std::size_t i = 0; i < r.trace_links.size(); ++i) {
            if (i) links += ';';
            links += r.trace_links[i];
        }
        rows.push_back({r.id, r.raw_text, links});
    }
    return csv::serialize(rows);
}

// ---------------------------------------------------------------------------
// ReqIF subset
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr const char* kAttributeNames[] = {"Text",     "Pattern",    "SystemName",
                                                  "Response", "Constraint", "Verification"};

inline std::string attr_identifier(std::string_view long_name) {
    return "attr-" + lower(long_name);
}

}  // namespace detail

// Emits the fixed ReqIF subset: header, one SPEC-OBJECT-TYPE "Requirement"
// with six string attribute definitions, one SPEC-OBJECT per requirement and
// a flat SPEC-HIERARCHY preserving order. Byte-deterministic.
inline std::string export_reqif(const RequirementSet& set) {
    xml::Node root{"REQ-IF"};

    xml::Node header{"REQ-IF-HEADER"};
    header.children.push_back({"IDENTIFIER", {}, {}, set.creation_time});
    header.children.push_back({"TITLE", {}, {}, set.title});
    xml::Node the_header{"THE-HEADER"};
    the_header.children.push_back(std::move(header));
    root.children.push_back(std::move(the_header));

    xml::Node spec_attributes{"SPEC-ATTRIBUTES"};
    for (const char* name : detail::kAttributeNames) {
        xml::Node def{"ATTRIBUTE-DEFINITION-STRING"};
        def.attrs = {{"IDENTIFIER", detail::attr_identifier(name)}, {"LONG-NAME", name}};
        spec_attributes.children.push_back(std::move(def));
    }
    xml::Node object_type{"SPEC-OBJECT-TYPE"};
    object_type.attrs = {{"IDENTIFIER", "requirement-type"}, {"LONG-NAME", "Requirement"}};
    object_type.children.push_back(std::move(spec_attributes));
    xml::Node spec_types{"SPEC-TYPES"};
    spec_types.children.push_back(std::move(object_type));

    xml::Node spec_objects{"SPEC-OBJECTS"};
    for (const auto& r : set.requirements) {
        xml::Node values{"VALUES"};
        auto add_value = [&](std::string_view definition, std::string value) {
            xml::Node v{"ATTRIBUTE-VALUE-STRING"};
            v.attrs = {{"THE-VALUE", std::move(value)}, {"DEFINITION", std::string(definition)}};
            values.children.push_back(std::move(v));
        };
        add_value("Text", r.raw_text);
        add_value("Pattern", to_string(r.pattern));
        add_value("SystemName", r.system_name);
        add_value("Response", r.response);
        add_value("Constraint", r.constraint ? constraint_to_string(*r.constraint) : "");
        add_value("Verification", to_string(r.verification));
        xml::Node object{"SPEC-OBJECT"};
        object.attrs = {{"IDENTIFIER", r.id}};
        object.children.push_back(std::move(values));
        spec_objects.children.push_back(std::move(object));
    }

    xml::Node hierarchy_children{"CHILDREN"};
    for (const auto& r : set.requirements) {
        xml::Node h{"SPEC-HIERARCHY"};
        h.attrs = {{"IDENTIFIER", "hierarchy-" + r.id}, {"OBJECT", r.id}};
        hierarchy_children.children.push_back(std::move(h));
    }
    xml::Node specification{"SPECIFICATION"};
    specification.attrs = {{"IDENTIFIER", "specification-main"}};
    specification.children.push_back(std::move(hierarchy_children));
    xml::Node specifications{"SPECIFICATIONS"};
    specifications.children.push_back(std::move(specification));

    xml::Node content{"REQ-IF-CONTENT"};
    content.children.push_back(std::move(spec_types));
    content.children.push_back(std::move(spec_objects));
    content.children.push_back(std::move(specifications));
    xml::Node core{"CORE-CONTENT"};
    core.children.push_back(std::move(content));
    root.children.push_back(std::move(core));

    return xml::serialize(root);
}

inline RequirementSet import_reqif(std::string_view document) {
    xml::Node root = [&] {
        try {
            return xml::parse(document);
        } catch (const Error& e) {
            raise(kModule, "SchemaViolation", e.what());
        }
    }();
    if (root.name != "REQ-IF") raise(kModule, "SchemaViolation", "root element must be REQ-IF");

    RequirementSet set;
    if (const auto* the_header = root.child("THE-HEADER")) {
        if (const auto* header = the_header->child("REQ-IF-HEADER")) {
            if (const auto* id = header->child("IDENTIFIER")) set.creation_time = id->text;
            if (const auto* title = header->child("TITLE")) set.title = title->text;
        }
    }

    const auto* core = root.child("CORE-CONTENT");
    const auto* content = core ? core->child("REQ-IF-CONTENT") : nullptr;
    if (!content) raise(kModule, "SchemaViolation", "missing CORE-CONTENT/REQ-IF-CONTENT");

    // The six attribute definitions must all be declared.
    const auto* spec_types = content->child("SPEC-TYPES");
    const auto* object_type = spec_types ? spec_types->child("SPEC-OBJECT-TYPE") : nullptr;
    const auto* spec_attrs = object_type ? object_type->child("SPEC-ATTRIBUTES") : nullptr;
    if (!spec_attrs) raise(kModule, "SchemaViolation", "missing SPEC-TYPES attribute definitions");
    std::set<std::string> defined;
    for (const auto* def : spec_attrs->children_named("ATTRIBUTE-DEFINITION-STRING")) {
        const auto* long_name = def->attr("LONG-NAME");
        if (!long_name) raise(kModule, "SchemaViolation", "attribute definition lacks LONG-NAME");
        defined.insert(*long_name);
    }
    for (const char* name : detail::kAttributeNames)
        if (!defined.count(name))
            raise(kModule, "SchemaViolation",
                  std::string("missing ATTRIBUTE-DEFINITION-STRING for ") + name);

    const auto* spec_objects = content->child("SPEC-OBJECTS");
    if (!spec_objects) raise(kModule, "SchemaViolation", "missing SPEC-OBJECTS");

    std::vector<Requirement> by_document_order;
    for (const auto* object : spec_objects->children_named("SPEC-OBJECT")) {
        const auto* id = object->attr("IDENTIFIER");
        if (!id) raise(kModule, "SchemaViolation", "SPEC-OBJECT lacks IDENTIFIER");
        Requirement req;
        req.id = *id;
        const auto* values = object->child("VALUES");
        if (!values) raise(kModule, "SchemaViolation", "SPEC-OBJECT " + req.id + " lacks VALUES");
        for (const auto* value : values->children_named("ATTRIBUTE-VALUE-STRING")) {
            const auto* definition = value->attr("DEFINITION");
            const auto* the_value = value->attr("THE-VALUE");
            if (!definition || !the_value)
                raise(kModule, "SchemaViolation", "attribute value lacks DEFINITION or THE-VALUE");
            const std::string& d = *definition;
            if (d == "Text") {
                req.raw_text = *the_value;
            } else if (d == "Pattern") {
                auto p = pattern_from_string(*the_value);
                if (!p) raise(kModule, "SchemaViolation", "unknown pattern '" + *the_value + "'");
                req.pattern = *p;
            } else if (d == "SystemName") {
                req.system_name = *the_value;
            } else if (d == "Response") {
                req.response = *the_value;
            } else if (d == "Constraint") {
                req.constraint = constraint_from_string(*the_value);
            } else if (d == "Verification") {
                auto v = verification_from_string(*the_value);
                if (!v)
                    raise(kModule, "SchemaViolation",
                          "unknown verification state '" + *the_value + "'");
                req.verification = *v;
            } else {
                raise(kModule, "UnknownAttribute", "unknown attribute '" + d + "'");
            }
        }
        // Clauses are not carried by ReqIF; recover them from the text.
        ParsedEars parsed = parse_ears(req.raw_text);
        if (parsed.pattern != req.pattern)
            raise(kModule, "SchemaViolation",
                  "stored pattern " + to_string(req.pattern) + " disagrees with text of " + req.id);
        req.clauses = parsed.clauses;
        by_document_order.push_back(std::move(req));
    }

    const auto* specifications = content->child("SPECIFICATIONS");
    const auto* specification = specifications ? specifications->child("SPECIFICATION") : nullptr;
    const auto* children = specification ? specification->child("CHILDREN") : nullptr;
    if (!children) raise(kModule, "SchemaViolation", "missing SPECIFICATIONS hierarchy");
    std::set<std::string> placed;
    for (const auto* h : children->children_named("SPEC-HIERARCHY")) {
        const auto* ref = h->attr("OBJECT");
        if (!ref) raise(kModule, "SchemaViolation", "SPEC-HIERARCHY lacks OBJECT");
        auto it = std::find_if(by_document_order.begin(), by_document_order.end(),
                               [&](const Requirement& r) { return r.id == *ref; });
        if (it == by_document_order.end())
            raise(kModule, "SchemaViolation", "hierarchy references unknown object '" + *ref + "'");
        if (!placed.insert(*ref).second)
            raise(kModule, "SchemaViolation", "object '" + *ref + "' appears twice in hierarchy");
        set.requirements.push_back(*it);
    }
    if (placed.size() != by_document_order.size())
        raise(kModule, "SchemaViolation", "SPEC-OBJECTS not fully covered by the hierarchy");
    return set;
}

// Equality over the fields the ReqIF subset carries (trace links and the
// audit trail are CSV/pipeline-side data and are out of scope here).
inline bool semantically_equal(const RequirementSet& a, const RequirementSet& b) {
    if (a.title != b.title || a.creation_time != b.creation_time) return false;
    if (a.requirements.size() != b.requirements.size()) return false;
    for (std::size_t i = 0; i < a.requirements.size(); ++i) {
        const auto& x = a.requirements[i];
        const auto& y = b.requirements[i];
        if (x.id != y.id || x.raw_text != y.raw_text || x.pattern != y.pattern ||
            x.system_name != y.system_name || x.response != y.response ||
            x.clauses != y.clauses || x.constraint != y.constraint ||
            x.verification != y.verification)
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Verification state updates
// ---------------------------------------------------------------------------

struct VerificationOutcome {
    std::string requirement_id;
    VerificationState state;  // Passed or Failed
    std::string evidence;
};

// Applies outcomes and appends evidence to the audit trail; everything else
// is untouched. States never go back to Unverified.
inline RequirementSet update_verification_state(RequirementSet set,
                                                const std::vector<VerificationOutcome>& outcomes) {
    for (const auto& outcome : outcomes) {
        auto it = std::find_if(set.requirements.begin(), set.requirements.end(),
                               [&](const Requirement& r) { return r.id == outcome.requirement_id; });
        if (it == set.requirements.end())
            raise(kModule, "UnknownRequirementId",
                  "no requirement with id '" + outcome.requirement_id + "'");
        if (outcome.state == VerificationState::Unverified)
            raise(kModule, "UnknownRequirementId",
                  "outcomes may only set Passed or Failed, not Unverified");
        it->verification = outcome.state;
        it->audit.push_back(outcome.evidence);
    }
    return set;
}

}  // namespace ontoline::reqmodel
