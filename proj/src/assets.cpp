#include "ppmarket/assets.hpp"

#include <nlohmann/json.hpp>

#include "ppmarket/bytes.hpp"

namespace ppmarket {

using Json = nlohmann::json;

std::string_view to_string(AssetKind k) {
    switch (k) {
        case AssetKind::Member: return "Member";
        case AssetKind::DS: return "DS";
        case AssetKind::DSS: return "DSS";
        case AssetKind::CI: return "CI";
        case AssetKind::Mod: return "Mod";
        case AssetKind::TC: return "TC";
        case AssetKind::TJ: return "TJ";
    }
    return "?";
}

std::string_view to_string(MemberKind k) {
    switch (k) {
        case MemberKind::DataOwner: return "DO";
        case MemberKind::CloudOwner: return "CO";
        case MemberKind::ModelOwner: return "MO";
    }
    return "?";
}

std::string_view to_string(CiStatus s) {
    switch (s) {
        case CiStatus::Free: return "Free";
        case CiStatus::Joined: return "Joined";
        case CiStatus::Verified: return "Verified";
        case CiStatus::Fraud: return "Fraud";
    }
    return "?";
}

std::string_view to_string(TcStatus s) {
    switch (s) {
        case TcStatus::Requested: return "Requested";
        case TcStatus::Approved: return "Approved";
        case TcStatus::Training: return "Training";
        case TcStatus::RoundDone: return "RoundDone";
        case TcStatus::Trained: return "Trained";
    }
    return "?";
}

std::string_view to_string(TjStatus s) {
    switch (s) {
        case TjStatus::Pending: return "Pending";
        case TjStatus::Updated: return "Updated";
        case TjStatus::Void: return "Void";
    }
    return "?";
}

MemberKind member_kind_from(std::string_view s) {
    if (s == "DO") return MemberKind::DataOwner;
    if (s == "CO") return MemberKind::CloudOwner;
    if (s == "MO") return MemberKind::ModelOwner;
    throw ParseError("unknown member kind: " + std::string(s));
}

CiStatus ci_status_from(std::string_view s) {
    if (s == "Free") return CiStatus::Free;
    if (s == "Joined") return CiStatus::Joined;
    if (s == "Verified") return CiStatus::Verified;
    if (s == "Fraud") return CiStatus::Fraud;
    throw ParseError("unknown CI status: " + std::string(s));
}

TcStatus tc_status_from(std::string_view s) {
    if (s == "Requested") return TcStatus::Requested;
    if (s == "Approved") return TcStatus::Approved;
    if (s == "Training") return TcStatus::Training;
    if (s == "RoundDone") return TcStatus::RoundDone;
    if (s == "Trained") return TcStatus::Trained;
    throw ParseError("unknown TC status: " + std::string(s));
}

TjStatus tj_status_from(std::string_view s) {
    if (s == "Pending") return TjStatus::Pending;
    if (s == "Updated") return TjStatus::Updated;
    if (s == "Void") return TjStatus::Void;
    throw ParseError("unknown TJ status: " + std::string(s));
}

std::string asset_key(AssetKind kind, std::string_view id) {
    std::string k(to_string(kind));
    k += ':';
    k += id;
    return k;
}

std::pair<AssetKind, std::string> parse_asset_key(std::string_view key) {
    auto colon = key.find(':');
    if (colon == std::string_view::npos || colon + 1 >= key.size())
        throw ParseError("malformed asset key: " + std::string(key));
    std::string_view prefix = key.substr(0, colon);
    std::string id(key.substr(colon + 1));
    for (AssetKind k : {AssetKind::Member, AssetKind::DS, AssetKind::DSS, AssetKind::CI,
                        AssetKind::Mod, AssetKind::TC, AssetKind::TJ}) {
        if (prefix == to_string(k)) return {k, id};
    }
    throw ParseError("unknown asset kind in key: " + std::string(key));
}

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw InvariantViolation(what);
}

void check_member(const Member& a) {
    require(!a.id.empty(), "member id empty");
}

void check_dataset(const Dataset& a) {
    require(!a.id.empty(), "dataset id empty");
    require(!a.owner.empty(), "dataset owner empty");
    require(a.m >= 2, "dataset m < 2");
    require(a.n >= 1, "dataset n < 1");
    require(static_cast<int64_t>(a.dss_ids.size()) <= a.m, "dataset has more DSS than m");
}

void check_dss(const DataSubset& a) {
    require(!a.id.empty(), "dss id empty");
    require(!a.ds_id.empty(), "dss parent empty");
    require(a.index >= 0, "dss index negative");
    require(a.row_count >= 0, "dss row count negative");
}

void check_ci(const CloudInstance& a) {
    require(!a.id.empty(), "ci id empty");
    require(!a.co.empty(), "ci co empty");
    require(a.rounds >= 0, "ci rounds negative");
    bool committed = !a.hash.empty() || !a.nonce.empty();
    if (a.status == CiStatus::Free)
        require(!committed, "free ci carries a commitment");
    if (a.status == CiStatus::Joined || a.status == CiStatus::Verified)
        require(!a.hash.empty() && !a.nonce.empty(), "joined ci missing commitment");
    if (committed) {
        require(a.hash.size() == 64 && is_hex(a.hash), "ci hash not 64 hex chars");
        require(a.nonce.size() == 32 && is_hex(a.nonce), "ci nonce not 32 hex chars");
    }
}

void check_mod(const ModelAsset& a) {
    require(!a.id.empty(), "mod id empty");
    require(!a.owner.empty(), "mod owner empty");
    require(a.training_method.learning_rate > 0.0, "learning rate not positive");
    require(a.training_method.local_epochs >= 1, "local epochs not positive");
}

void check_tc(const TrainCouple& a) {
    require(!a.id.empty(), "tc id empty");
    require(!a.ds.empty() && !a.mod.empty(), "tc references empty");
    require(a.rem >= 0, "tc rem negative");
    require(a.round >= 0, "tc round negative");
    require((a.status == TcStatus::Training) == (a.rem > 0), "tc status/rem mismatch");
}

void check_tj(const TrainJob& a) {
    require(!a.id.empty(), "tj id empty");
    require(!a.tc.empty() && !a.ci.empty(), "tj references empty");
    require(a.round >= 1, "tj round < 1");
    bool filled = !a.model_hash.empty() && !a.nonce.empty() && !a.enc_model_url.empty();
    if (a.status == TjStatus::Updated)
        require(filled, "updated tj missing fields");
    else
        require(a.model_hash.empty() && a.nonce.empty() && a.enc_model_url.empty(),
                "non-updated tj carries result fields");
}

std::string dump(const Json& j) {
    // nlohmann objects are key-sorted maps; compact dump is canonical.
    return j.dump();
}

const Json& field(const Json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw ParseError(std::string("missing field: ") + name);
    return *it;
}

std::string str_field(const Json& j, const char* name) {
    const Json& f = field(j, name);
    if (!f.is_string()) throw ParseError(std::string("field not a string: ") + name);
    return f.get<std::string>();
}

int64_t int_field(const Json& j, const char* name) {
    const Json& f = field(j, name);
    if (!f.is_number_integer()) throw ParseError(std::string("field not an integer: ") + name);
    return f.get<int64_t>();
}

std::vector<std::string> list_field(const Json& j, const char* name) {
    const Json& f = field(j, name);
    if (!f.is_array()) throw ParseError(std::string("field not a list: ") + name);
    std::vector<std::string> out;
    for (const auto& e : f) {
        if (!e.is_string()) throw ParseError(std::string("list element not a string: ") + name);
        out.push_back(e.get<std::string>());
    }
    return out;
}

Json parse_json(std::string_view bytes) {
    Json j = Json::parse(bytes, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ParseError("asset bytes not a JSON object");
    return j;
}

template <typename Check, typename T>
T checked_parse(Check check, T a) {
    try {
        check(a);
    } catch (const InvariantViolation& e) {
        throw ParseError(std::string("parsed asset invalid: ") + e.what());
    }
    return a;
}

}  // namespace

std::string serialize(const Member& a) {
    check_member(a);
    Json j{{"id", a.id},
           {"kind", std::string(to_string(a.kind))},
           {"name", a.name},
           {"organization", a.organization},
           {"howMany", a.how_many}};
    return dump(j);
}

Member parse_member(std::string_view bytes) {
    Json j = parse_json(bytes);
    Member a;
    a.id = str_field(j, "id");
    a.kind = member_kind_from(str_field(j, "kind"));
    a.name = str_field(j, "name");
    a.organization = str_field(j, "organization");
    a.how_many = str_field(j, "howMany");
    return checked_parse(check_member, a);
}

std::string serialize(const Dataset& a) {
    check_dataset(a);
    Json j{{"id", a.id},      {"owner", a.owner},
           {"m", a.m},        {"n", a.n},
           {"dssIds", a.dss_ids}, {"sampleMeta", a.sample_meta}};
    return dump(j);
}

Dataset parse_dataset(std::string_view bytes) {
    Json j = parse_json(bytes);
    Dataset a;
    a.id = str_field(j, "id");
    a.owner = str_field(j, "owner");
    a.m = int_field(j, "m");
    a.n = int_field(j, "n");
    a.dss_ids = list_field(j, "dssIds");
    a.sample_meta = str_field(j, "sampleMeta");
    return checked_parse(check_dataset, a);
}

std::string serialize(const DataSubset& a) {
    check_dss(a);
    Json j{{"id", a.id},
           {"dsId", a.ds_id},
           {"index", a.index},
           {"rowCount", a.row_count},
           {"ciIds", a.ci_ids}};
    return dump(j);
}

DataSubset parse_dss(std::string_view bytes) {
    Json j = parse_json(bytes);
    DataSubset a;
    a.id = str_field(j, "id");
    a.ds_id = str_field(j, "dsId");
    a.index = int_field(j, "index");
    a.row_count = int_field(j, "rowCount");
    a.ci_ids = list_field(j, "ciIds");
    return checked_parse(check_dss, a);
}

std::string serialize(const CloudInstance& a) {
    check_ci(a);
    Json j{{"id", a.id},       {"co", a.co},
           {"dss", a.dss},     {"status", std::string(to_string(a.status))},
           {"nonce", a.nonce}, {"hash", a.hash},
           {"evidence", a.evidence}, {"rounds", a.rounds}};
    return dump(j);
}

CloudInstance parse_ci(std::string_view bytes) {
    Json j = parse_json(bytes);
    CloudInstance a;
    a.id = str_field(j, "id");
    a.co = str_field(j, "co");
    a.dss = str_field(j, "dss");
    a.status = ci_status_from(str_field(j, "status"));
    a.nonce = str_field(j, "nonce");
    a.hash = str_field(j, "hash");
    a.evidence = str_field(j, "evidence");
    a.rounds = int_field(j, "rounds");
    return checked_parse(check_ci, a);
}

std::string serialize(const ModelAsset& a) {
    check_mod(a);
    Json tm{{"learningRate", a.training_method.learning_rate},
            {"localEpochs", a.training_method.local_epochs},
            {"keyRef", a.training_method.key_ref}};
    Json j{{"id", a.id},
           {"owner", a.owner},
           {"modelType", a.model_type},
           {"modelUrl", a.model_url},
           {"trainingMethod", tm},
           {"modelHash", a.model_hash}};
    return dump(j);
}

ModelAsset parse_mod(std::string_view bytes) {
    Json j = parse_json(bytes);
    ModelAsset a;
    a.id = str_field(j, "id");
    a.owner = str_field(j, "owner");
    a.model_type = str_field(j, "modelType");
    a.model_url = str_field(j, "modelUrl");
    a.model_hash = str_field(j, "modelHash");
    const Json& tm = field(j, "trainingMethod");
    if (!tm.is_object()) throw ParseError("trainingMethod not an object");
    const Json& lr = field(tm, "learningRate");
    if (!lr.is_number()) throw ParseError("learningRate not a number");
    a.training_method.learning_rate = lr.get<double>();
    a.training_method.local_epochs = int_field(tm, "localEpochs");
    a.training_method.key_ref = str_field(tm, "keyRef");
    return checked_parse(check_mod, a);
}

std::string serialize(const TrainCouple& a) {
    check_tc(a);
    Json j{{"id", a.id},
           {"ds", a.ds},
           {"mod", a.mod},
           {"status", std::string(to_string(a.status))},
           {"rem", a.rem},
           {"paid", a.paid},
           {"round", a.round},
           {"curDssIds", a.cur_dss_ids},
           {"selSeed", a.sel_seed}};
    return dump(j);
}

TrainCouple parse_tc(std::string_view bytes) {
    Json j = parse_json(bytes);
    TrainCouple a;
    a.id = str_field(j, "id");
    a.ds = str_field(j, "ds");
    a.mod = str_field(j, "mod");
    a.status = tc_status_from(str_field(j, "status"));
    a.rem = int_field(j, "rem");
    const Json& paid = field(j, "paid");
    if (!paid.is_boolean()) throw ParseError("paid not a boolean");
    a.paid = paid.get<bool>();
    a.round = int_field(j, "round");
    a.cur_dss_ids = list_field(j, "curDssIds");
    a.sel_seed = str_field(j, "selSeed");
    return checked_parse(check_tc, a);
}

std::string serialize(const TrainJob& a) {
    check_tj(a);
    Json j{{"id", a.id},
           {"tc", a.tc},
           {"ci", a.ci},
           {"round", a.round},
           {"modelHash", a.model_hash},
           {"nonce", a.nonce},
           {"encModelUrl", a.enc_model_url},
           {"status", std::string(to_string(a.status))}};
    return dump(j);
}

TrainJob parse_tj(std::string_view bytes) {
    Json j = parse_json(bytes);
    TrainJob a;
    a.id = str_field(j, "id");
    a.tc = str_field(j, "tc");
    a.ci = str_field(j, "ci");
    a.round = int_field(j, "round");
    a.model_hash = str_field(j, "modelHash");
    a.nonce = str_field(j, "nonce");
    a.enc_model_url = str_field(j, "encModelUrl");
    a.status = tj_status_from(str_field(j, "status"));
    return checked_parse(check_tj, a);
}

Asset parse_asset(std::string_view key, std::string_view bytes) {
    auto [kind, id] = parse_asset_key(key);
    switch (kind) {
        case AssetKind::Member: return parse_member(bytes);
        case AssetKind::DS: return parse_dataset(bytes);
        case AssetKind::DSS: return parse_dss(bytes);
        case AssetKind::CI: return parse_ci(bytes);
        case AssetKind::Mod: return parse_mod(bytes);
        case AssetKind::TC: return parse_tc(bytes);
        case AssetKind::TJ: return parse_tj(bytes);
    }
    throw ParseError("unreachable asset kind");
}

bool ci_edge_ok(CiStatus from, CiStatus to) {
    if (from == CiStatus::Free && to == CiStatus::Joined) return true;
    if (from == CiStatus::Joined && to == CiStatus::Verified) return true;
    // Fraud is terminal and reachable from every live state: verification
    // failure, a duplicate commitment, or an explicit fraud flag.
    if (to == CiStatus::Fraud && from != CiStatus::Fraud) return true;
    return false;
}

bool tc_edge_ok(TcStatus from, TcStatus to) {
    switch (from) {
        case TcStatus::Requested: return to == TcStatus::Approved;
        case TcStatus::Approved: return to == TcStatus::Training;
        case TcStatus::Training: return to == TcStatus::RoundDone;
        case TcStatus::RoundDone: return to == TcStatus::Training || to == TcStatus::Trained;
        case TcStatus::Trained: return false;
    }
    return false;
}

bool tj_edge_ok(TjStatus from, TjStatus to) {
    return from == TjStatus::Pending && (to == TjStatus::Updated || to == TjStatus::Void);
}

namespace {

[[noreturn]] void bad_edge(std::string_view kind, std::string_view from, std::string_view to) {
    throw IllegalTransition(std::string(kind) + ": " + std::string(from) + " -> " +
                            std::string(to));
}

}  // namespace

CloudInstance transition(const CloudInstance& a, CiStatus next) {
    if (!ci_edge_ok(a.status, next)) bad_edge("CI", to_string(a.status), to_string(next));
    CloudInstance out = a;
    out.status = next;
    return out;
}

TrainCouple transition(const TrainCouple& a, TcStatus next) {
    if (!tc_edge_ok(a.status, next)) bad_edge("TC", to_string(a.status), to_string(next));
    TrainCouple out = a;
    out.status = next;
    return out;
}

TrainJob transition(const TrainJob& a, TjStatus next) {
    if (!tj_edge_ok(a.status, next)) bad_edge("TJ", to_string(a.status), to_string(next));
    TrainJob out = a;
    out.status = next;
    return out;
}

}  // namespace ppmarket
