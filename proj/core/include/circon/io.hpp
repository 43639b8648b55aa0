#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "circon/ccs.hpp"
#include "circon/dtw.hpp"
#include "circon/mscs.hpp"
#include "circon/reductions.hpp"
#include "circon/rmcc.hpp"

namespace circon::io {

using json = nlohmann::ordered_json;

enum class Kind { rmcc, mscs, ccs, dtw };

std::string kind_name(Kind k);
Kind kind_from_name(const std::string& name);

struct CcsPayload {
    std::vector<BinaryString> strings;
    std::optional<Rational> target;
};

/// One instance file; exactly the payload matching `kind` is set.
struct InstanceFile {
    Kind kind = Kind::mscs;
    std::optional<RmccGraph> graph;
    std::optional<MscsInstance> mscs;
    std::optional<CcsPayload> ccs;
    std::optional<DtwInstance> dtw;
    json provenance;  // null when absent
};

json instance_to_json(const InstanceFile& file);
InstanceFile instance_from_json(const json& j);

InstanceFile load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const InstanceFile& file);

/// Plain-text graph format: header "rmcc k n d", one line per vertex
/// ("color index"), one line per edge ("j.i j.i").
RmccGraph parse_rmcc_text(std::istream& in);
std::string format_rmcc_text(const RmccGraph& g);

/// FNV-1a 64-bit, hex digest. Instance hashes are taken over the compact
/// dump of the provenance-free serialization.
std::string fnv1a_hex(std::string_view data);
std::string instance_hash(const InstanceFile& file);

// --------------------------------------------------------------------------
// Reduction bundles: source + parameters + output + witness, verifiable
// offline by replaying the construction.
// --------------------------------------------------------------------------

json make_bundle_rmcc_to_mscs(const RmccGraph& source, const std::string& cost_fn,
                              const MscsReduction& red,
                              const std::optional<MulticoloredClique>& witness);
json make_bundle_mscs_to_ccs(const MscsInstance& source, const CcsPaddedInstance& out);
json make_bundle_mscs_to_dtw(const MscsInstance& source, const DtwReduction& red,
                             const std::optional<ShiftVector>& witness_shift);

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass = true;
    double seconds = 0.0;

    void add(std::string name, bool pass, std::string detail = "");
};

/// Replays the construction recorded in the bundle and audits the witness.
VerifyReport verify_bundle(const json& bundle);

std::string format_report(const VerifyReport& report);
json report_to_json(const VerifyReport& report);

json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const json& j);

}  // namespace circon::io
