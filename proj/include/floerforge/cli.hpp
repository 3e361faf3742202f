#pragma once

#include "floerforge/endfloer.hpp"

#include "json.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace floerforge::cli {

using Json = nlohmann::json;

// File, parse and flag errors; exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json to_json(const Grading& g);
Json to_json(const FreeComplex& c);
Json to_json(const FUDecomposition& d);
Json to_json(const KnotComplex& k);
Json to_json(const HFPlusResult& r);
Json to_json(const HFKResult& r);
Json to_json(const EndFloerReport& r);
Json to_json(const SliceR4Spec& s);
Json to_json(const DistinguishVerdict& v);

Grading grading_from_json(const Json& j);
FreeComplex free_complex_from_json(const Json& j);
FUDecomposition decomposition_from_json(const Json& j);
KnotComplex knot_from_json(const Json& j);
HFPlusResult hf_plus_from_json(const Json& j);

// A spec file holds one operand object or {"operands": [...]}. An operand's
// "knot" is an inline complex or a path, resolved against `base` and then
// the corpus directory.
std::vector<SliceR4Spec> slice_specs_from_json(const Json& j, const std::filesystem::path& base);

// Sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

std::string table(const HFPlusResult& r);
std::string table(const HFKResult& r);
std::string table(const EndFloerReport& r);

// FLOERFORGE_CORPUS if set, else the configured default.
std::filesystem::path corpus_dir();
Json read_json(const std::filesystem::path& path);
KnotComplex load_knot(const std::filesystem::path& path);

// Corpus entries: file stem and the complex it holds.
std::vector<std::pair<std::string, KnotComplex>> corpus_entries(const std::filesystem::path& dir);

struct VerifyRow {
    int id = 0;
    std::string name;
    std::string expected;
    std::string actual;
    bool pass = false;
};

// Criteria are numbered from 1.
VerifyRow verify_criterion(int id, const std::filesystem::path& corpus);
int verify_criteria_count();

// Rows whose name contains `filter` (all rows when empty), in id order.
std::vector<VerifyRow> verify_suite(const std::string& filter, const std::filesystem::path& corpus);
std::string table(const std::vector<VerifyRow>& rows);

// Parses argv and runs the command. Returns 0, 1 (domain error) or 2 (usage).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace floerforge::cli
