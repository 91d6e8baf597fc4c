#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ppmarket {

// On-chain asset kinds. World-state keys are "<Kind>:<id>".
enum class AssetKind { Member, DS, DSS, CI, Mod, TC, TJ };

enum class MemberKind { DataOwner, CloudOwner, ModelOwner };

enum class CiStatus { Free, Joined, Verified, Fraud };

// The round lifecycle needs a distinct state between rounds: rem hitting 0
// moves Training -> RoundDone, from which the model owner either starts the
// next round or finishes the engagement.
enum class TcStatus { Requested, Approved, Training, RoundDone, Trained };

// Void marks a per-round slot resolved negatively (duplicate commitment or a
// fraud flag mid-round) so round completion stays live under fraud.
enum class TjStatus { Pending, Updated, Void };

struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IllegalTransition : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Member {
    std::string id;  // ledger-assigned pseudo-id, 64 hex chars
    MemberKind kind = MemberKind::DataOwner;
    std::string name;          // optional, carried verbatim
    std::string organization;  // optional
    std::string how_many;      // optional, carried verbatim, never read
};

struct Dataset {
    std::string id;
    std::string owner;  // DO pseudo-id
    int64_t m = 0;      // number of subsets
    int64_t n = 0;      // replication factor per subset
    std::vector<std::string> dss_ids;
    std::string sample_meta;
};

struct DataSubset {
    std::string id;
    std::string ds_id;
    int64_t index = 0;
    int64_t row_count = 0;  // declared by the DO; aggregation weight
    std::vector<std::string> ci_ids;
};

struct CloudInstance {
    std::string id;
    std::string co;   // CO pseudo-id
    std::string dss;  // optional until assigned
    CiStatus status = CiStatus::Free;
    std::string nonce;  // 32 hex chars once joined
    std::string hash;   // 64 hex chars once joined
    std::string evidence;  // set when flagged fraudulent
    int64_t rounds = 0;
};

struct TrainingMethod {
    double learning_rate = 0.0;
    int64_t local_epochs = 0;
    std::string key_ref;  // mask key reference resolvable via the keystore
};

struct ModelAsset {
    std::string id;
    std::string owner;  // MO pseudo-id
    std::string model_type;
    std::string model_url;
    TrainingMethod training_method;
    std::string model_hash;  // SHA-256 hex of the bytes at model_url
};

struct TrainCouple {
    std::string id;
    std::string ds;
    std::string mod;
    TcStatus status = TcStatus::Requested;
    int64_t rem = 0;
    bool paid = false;  // carried, inert
    int64_t round = 0;
    std::vector<std::string> cur_dss_ids;
    std::string sel_seed;  // round-selection seed, fixed at approval
};

struct TrainJob {
    std::string id;
    std::string tc;
    std::string ci;
    int64_t round = 0;
    std::string model_hash;     // set when updated
    std::string nonce;          // set when updated
    std::string enc_model_url;  // set when updated
    TjStatus status = TjStatus::Pending;
};

using Asset =
    std::variant<Member, Dataset, DataSubset, CloudInstance, ModelAsset, TrainCouple, TrainJob>;

std::string_view to_string(AssetKind k);
std::string_view to_string(MemberKind k);
std::string_view to_string(CiStatus s);
std::string_view to_string(TcStatus s);
std::string_view to_string(TjStatus s);

MemberKind member_kind_from(std::string_view s);
CiStatus ci_status_from(std::string_view s);
TcStatus tc_status_from(std::string_view s);
TjStatus tj_status_from(std::string_view s);

std::string asset_key(AssetKind kind, std::string_view id);

/// Splits "<Kind>:<id>"; throws ParseError on unknown kind or bad shape.
std::pair<AssetKind, std::string> parse_asset_key(std::string_view key);

// Canonical serialization: field-name-sorted JSON, no insignificant
// whitespace, UTF-8, every field always present. Throws InvariantViolation
// when the asset breaks its own invariants.
std::string serialize(const Member&);
std::string serialize(const Dataset&);
std::string serialize(const DataSubset&);
std::string serialize(const CloudInstance&);
std::string serialize(const ModelAsset&);
std::string serialize(const TrainCouple&);
std::string serialize(const TrainJob&);

Member parse_member(std::string_view bytes);
Dataset parse_dataset(std::string_view bytes);
DataSubset parse_dss(std::string_view bytes);
CloudInstance parse_ci(std::string_view bytes);
ModelAsset parse_mod(std::string_view bytes);
TrainCouple parse_tc(std::string_view bytes);
TrainJob parse_tj(std::string_view bytes);

/// Parses world-state bytes according to the kind encoded in the key.
Asset parse_asset(std::string_view key, std::string_view bytes);

// Status machines. Each returns the asset with the new status applied and
// all other fields untouched; illegal edges throw IllegalTransition.
CloudInstance transition(const CloudInstance&, CiStatus next);
TrainCouple transition(const TrainCouple&, TcStatus next);
TrainJob transition(const TrainJob&, TjStatus next);

bool ci_edge_ok(CiStatus from, CiStatus to);
bool tc_edge_ok(TcStatus from, TcStatus to);
bool tj_edge_ok(TjStatus from, TjStatus to);

}  // namespace ppmarket
