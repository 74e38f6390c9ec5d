#include "bpprod/classification.hpp"

#include "bpprod/error.hpp"

#include <nlohmann/json.hpp>

#include <fnmatch.h>

#include <fstream>
#include <sstream>

namespace bpprod {

std::string_view to_string(LabourClass cls)
{
    switch (cls) {
    case LabourClass::low_skilled: return "low_skilled";
    case LabourClass::high_skilled: return "high_skilled";
    case LabourClass::automated: return "automated";
    case LabourClass::customer: return "customer";
    }
    return "unknown";
}

std::optional<LabourClass> parse_labour_class(std::string_view text)
{
    if (text == "low_skilled") return LabourClass::low_skilled;
    if (text == "high_skilled") return LabourClass::high_skilled;
    if (text == "automated") return LabourClass::automated;
    if (text == "customer") return LabourClass::customer;
    return std::nullopt;
}

ActivityClassification::ActivityClassification(std::vector<ClassificationRule> rules, LabourClass default_class)
    : rules_(std::move(rules)), default_class_(default_class)
{
    for (const auto& r : rules_) {
        if (r.pattern.empty()) {
            fail(ErrorKind::InvalidConfig, "classification rule with empty pattern");
        }
    }
}

LabourClass ActivityClassification::classify(std::string_view activity) const
{
    const std::string name(activity);
    for (const auto& r : rules_) {
        if (fnmatch(r.pattern.c_str(), name.c_str(), 0) == 0) {
            return r.cls;
        }
    }
    return default_class_;
}

LabourClass classify_activity(std::string_view activity, const ActivityClassification& classification)
{
    return classification.classify(activity);
}

ActivityClassification ActivityClassification::from_json_text(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::InvalidConfig, std::string("classification config is not valid JSON: ") + e.what());
    }
    auto get_class = [](const nlohmann::json& v, const std::string& where) {
        if (!v.is_string()) {
            fail(ErrorKind::InvalidConfig, where + ": class must be a string");
        }
        auto cls = parse_labour_class(v.get<std::string>());
        if (!cls) {
            fail(ErrorKind::InvalidConfig, where + ": unknown class '" + v.get<std::string>() + "'");
        }
        return *cls;
    };

    if (!doc.is_object()) {
        fail(ErrorKind::InvalidConfig, "classification config must be a JSON object");
    }
    if (doc.value("version", 0) != kSchemaVersion) {
        fail(ErrorKind::InvalidConfig, "classification config version must be " + std::to_string(kSchemaVersion));
    }
    if (!doc.contains("default_class")) {
        fail(ErrorKind::InvalidConfig, "classification config lacks 'default_class'");
    }
    const LabourClass def = get_class(doc["default_class"], "default_class");

    std::vector<ClassificationRule> rules;
    if (doc.contains("rules")) {
        if (!doc["rules"].is_array()) {
            fail(ErrorKind::InvalidConfig, "'rules' must be an array");
        }
        std::size_t i = 0;
        for (const auto& r : doc["rules"]) {
            const std::string where = "rules[" + std::to_string(i++) + "]";
            if (!r.is_object() || !r.contains("pattern") || !r["pattern"].is_string() || !r.contains("class")) {
                fail(ErrorKind::InvalidConfig, where + " needs string 'pattern' and 'class'");
            }
            rules.push_back({r["pattern"].get<std::string>(), get_class(r["class"], where)});
        }
    }
    return ActivityClassification(std::move(rules), def);
}

ActivityClassification ActivityClassification::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        fail(ErrorKind::InvalidConfig, "cannot open classification config " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string ActivityClassification::to_json_text() const
{
    nlohmann::json doc;
    doc["version"] = kSchemaVersion;
    doc["default_class"] = std::string(to_string(default_class_));
    doc["rules"] = nlohmann::json::array();
    for (const auto& r : rules_) {
        doc["rules"].push_back({{"pattern", r.pattern}, {"class", std::string(to_string(r.cls))}});
    }
    return doc.dump(2) + "\n";
}

ActivityClassification default_bpic_classification()
{
    using C = LabourClass;
    return ActivityClassification(
        {
            // Waiting on the applicant: offer returns, acceptances, completed paperwork.
            {"O_SENT_BACK", C::customer},
            {"O_Returned", C::customer},
            {"O_ACCEPTED", C::customer},
            {"O_Accepted", C::customer},
            {"O_DECLINED", C::customer},
            {"O_Refused", C::customer},
            {"A_Complete", C::customer},
            {"A_Incomplete", C::customer},
            // 2017 machine-executed steps.
            {"A_Validating", C::automated},
            {"O_Create Offer", C::automated},
            {"O_Created", C::automated},
            {"O_Sent (online only)", C::automated},
            // Assessment and fraud work needs skilled staff.
            {"W_Valideren aanvraag*", C::high_skilled},
            {"W_Validate application*", C::high_skilled},
            {"W_Beoordelen fraude*", C::high_skilled},
            {"W_Assess potential fraud*", C::high_skilled},
            {"W_Personal Loan collection*", C::high_skilled},
            // Calls, lead handling and form completion are clerical.
            {"W_Nabellen*", C::low_skilled},
            {"W_Call*", C::low_skilled},
            {"W_Completeren*", C::low_skilled},
            {"W_Complete*", C::low_skilled},
            {"W_Afhandelen*", C::low_skilled},
            {"W_Handle*", C::low_skilled},
            {"W_Shortened*", C::low_skilled},
            {"W_Wijzigen*", C::low_skilled},
        },
        C::low_skilled);
}

}  // namespace bpprod
