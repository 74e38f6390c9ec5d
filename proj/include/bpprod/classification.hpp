#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bpprod {

enum class LabourClass { low_skilled, high_skilled, automated, customer };

std::string_view to_string(LabourClass cls);
std::optional<LabourClass> parse_labour_class(std::string_view text);

struct ClassificationRule {
    /// Shell-style glob (`*`, `?`, `[...]`), matched against the whole activity name.
    std::string pattern;
    LabourClass cls;
};

/// Ordered activity-to-class rules; the first matching rule wins.
class ActivityClassification {
public:
    static constexpr int kSchemaVersion = 1;

    ActivityClassification() = default;
    ActivityClassification(std::vector<ClassificationRule> rules, LabourClass default_class);

    LabourClass classify(std::string_view activity) const;

    const std::vector<ClassificationRule>& rules() const noexcept { return rules_; }
    LabourClass default_class() const noexcept { return default_class_; }

    /// Reads the versioned JSON config (see config/bpic_classification.json).
    static ActivityClassification from_json_text(std::string_view text);
    static ActivityClassification load(const std::filesystem::path& path);
    std::string to_json_text() const;

private:
    std::vector<ClassificationRule> rules_;
    LabourClass default_class_ = LabourClass::low_skilled;
};

LabourClass classify_activity(std::string_view activity, const ActivityClassification& classification);

/// Best-effort reconstruction for BPIC 2012 / 2017 activity names. Not authoritative:
/// the original mapping was never published.
ActivityClassification default_bpic_classification();

}  // namespace bpprod
