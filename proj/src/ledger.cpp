#include "ppmarket/ledger.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <istream>
#include <ostream>

#include "ppmarket/bytes.hpp"
#include "ppmarket/chaincode.hpp"

namespace ppmarket {

using Json = nlohmann::json;

std::string_view to_string(TxType t) {
    switch (t) {
        case TxType::CreateDO: return "CreateDO";
        case TxType::CreateCO: return "CreateCO";
        case TxType::CreateMO: return "CreateMO";
        case TxType::CreateDS: return "CreateDS";
        case TxType::CreateDSS: return "CreateDSS";
        case TxType::CreateCI: return "CreateCI";
        case TxType::JoinCI: return "JoinCI";
        case TxType::VerifyCI: return "VerifyCI";
        case TxType::CreateMod: return "CreateMod";
        case TxType::RequestTC: return "RequestTC";
        case TxType::ApproveTC: return "ApproveTC";
        case TxType::StartRound: return "StartRound";
        case TxType::UpdateTJ: return "UpdateTJ";
        case TxType::FinishTC: return "FinishTC";
        case TxType::FlagFraud: return "FlagFraud";
    }
    return "?";
}

std::optional<TxType> tx_type_from(std::string_view s) {
    for (TxType t : kAllTxTypes)
        if (s == to_string(t)) return t;
    return std::nullopt;
}

std::string_view to_string(EventType t) {
    switch (t) {
        case EventType::MemberCreated: return "MemberCreated";
        case EventType::DSCreated: return "DSCreated";
        case EventType::DSSCreated: return "DSSCreated";
        case EventType::CICreated: return "CICreated";
        case EventType::CIJoined: return "CIJoined";
        case EventType::CIVerified: return "CIVerified";
        case EventType::ModCreated: return "ModCreated";
        case EventType::TCRequested: return "TCRequested";
        case EventType::TCApproved: return "TCApproved";
        case EventType::RoundStarted: return "RoundStarted";
        case EventType::TJUpdated: return "TJUpdated";
        case EventType::RoundComplete: return "RoundComplete";
        case EventType::TCFinished: return "TCFinished";
        case EventType::FraudFlagged: return "FraudFlagged";
    }
    return "?";
}

namespace {

Json tx_to_json(const CommittedTx& ct) {
    return Json{{"args", ct.env.args},
                {"caller", ct.env.caller},
                {"submitTime", ct.env.submit_time},
                {"txId", ct.env.tx_id},
                {"txType", std::string(to_string(ct.env.tx_type))},
                {"valid", ct.valid}};
}

CommittedTx tx_from_json(const Json& j) {
    CommittedTx ct;
    if (!j.is_object()) throw CorruptChain("tx entry not an object");
    try {
        ct.env.tx_id = j.at("txId").get<std::string>();
        auto type = tx_type_from(j.at("txType").get<std::string>());
        if (!type) throw CorruptChain("unknown tx type in block log");
        ct.env.tx_type = *type;
        ct.env.caller = j.at("caller").get<std::string>();
        ct.env.args = j.at("args").get<std::vector<std::string>>();
        ct.env.submit_time = j.at("submitTime").get<int64_t>();
        ct.valid = j.at("valid").get<bool>();
    } catch (const Json::exception& e) {
        throw CorruptChain(std::string("malformed tx entry: ") + e.what());
    }
    return ct;
}

}  // namespace

std::string canonical_txs_json(const std::vector<CommittedTx>& txs) {
    Json arr = Json::array();
    for (const auto& ct : txs) arr.push_back(tx_to_json(ct));
    return arr.dump();
}

std::string compute_block_hash(const std::string& prev_hash_hex,
                               const std::vector<CommittedTx>& txs, uint64_t height,
                               int64_t cut_time) {
    Bytes preimage = hex_decode(prev_hash_hex);
    if (preimage.size() != 32) throw CorruptChain("prev hash not 32 bytes");
    append(preimage, canonical_txs_json(txs));
    append(preimage, "|" + std::to_string(height) + "|" + std::to_string(cut_time));
    return sha256_hex(preimage);
}

std::optional<std::string> WorldState::get(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

uint64_t WorldState::version(const std::string& key) const {
    auto it = versions_.find(key);
    return it == versions_.end() ? 0 : it->second;
}

void WorldState::put(const std::string& key, std::string bytes) {
    entries_[key] = std::move(bytes);
    ++versions_[key];
}

std::optional<LedgerEvent> EventStream::poll() {
    if (queue_.empty()) return std::nullopt;
    LedgerEvent ev = std::move(queue_.front());
    queue_.pop_front();
    return ev;
}

Ledger::Ledger(LedgerConfig cfg) : cfg_(cfg) {}

SubmitReceipt Ledger::submit(TransactionEnvelope env) {
    SubmitReceipt r;
    r.tx_id = env.tx_id;
    if (env.tx_id.empty()) {
        r.error = "MalformedEnvelope: empty tx id";
        return r;
    }
    if (seen_tx_ids_.count(env.tx_id)) {
        r.error = "MalformedEnvelope: duplicate tx id";
        return r;
    }
    bool is_create_member = env.tx_type == TxType::CreateDO || env.tx_type == TxType::CreateCO ||
                            env.tx_type == TxType::CreateMO;
    if (!is_create_member && env.caller.empty()) {
        r.error = "MalformedEnvelope: missing caller";
        return r;
    }
    seen_tx_ids_.insert(env.tx_id);
    r.accepted = true;
    pending_.push_back(Pending{std::move(env)});
    return r;
}

std::vector<Block> Ledger::tick(int64_t now) {
    if (now < last_tick_)
        throw ClockRegression("tick time " + std::to_string(now) + " before " +
                              std::to_string(last_tick_));
    last_tick_ = now;
    std::vector<Block> out;
    while (pending_.size() >= cfg_.block_size_limit)
        out.push_back(cut_block(now, cfg_.block_size_limit));
    if (!pending_.empty() &&
        now - pending_.front().env.submit_time >= cfg_.block_timeout_ms)
        out.push_back(cut_block(now, pending_.size()));
    return out;
}

Block Ledger::cut_block(int64_t now, size_t count) {
    Block b;
    b.height = blocks_.size();
    b.prev_hash = blocks_.empty() ? std::string(kZeroDigestHex) : blocks_.back().block_hash;
    b.cut_time = now;
    for (size_t i = 0; i < count; ++i) {
        b.txs.push_back(CommittedTx{std::move(pending_.front().env), false});
        pending_.pop_front();
    }
    commit_block(b);
    blocks_.push_back(b);
    return b;
}

void Ledger::commit_block(Block& block) {
    Bytes prev_raw = hex_decode(block.prev_hash);
    Digest32 prev{};
    std::copy(prev_raw.begin(), prev_raw.end(), prev.begin());
    for (auto& ct : block.txs) {
        TxOutcome oc = execute_tx(world_, index_, ct.env, prev);
        ct.valid = oc.valid;
        results_[ct.env.tx_id] = TxResult{oc.valid, oc.error, oc.value};
        if (!oc.valid) continue;
        for (auto& [key, bytes] : oc.writes) world_.put(key, std::move(bytes));
        for (auto& [h, owner] : oc.data_hash_adds) index_.data_hash_owner.emplace(h, owner);
        for (auto& [h, owner] : oc.model_hash_adds) index_.model_hash_owner.emplace(h, owner);
        for (LedgerEvent ev : oc.events) {
            ev.block_height = block.height;
            ev.emit_time = block.cut_time;
            ev.tx_id = ct.env.tx_id;
            event_log_.push_back(ev);
            for (auto& s : streams_)
                if (s->filter_.empty() || s->filter_.count(ev.type)) s->queue_.push_back(ev);
        }
    }
    block.block_hash = compute_block_hash(block.prev_hash, block.txs, block.height, block.cut_time);
}

std::optional<std::string> Ledger::get_state(const std::string& key) const {
    return world_.get(key);
}

uint64_t Ledger::get_version(const std::string& key) const {
    return world_.version(key);
}

std::shared_ptr<EventStream> Ledger::subscribe(std::set<EventType> filter) {
    auto s = std::make_shared<EventStream>();
    s->filter_ = std::move(filter);
    streams_.push_back(s);
    return s;
}

const TxResult* Ledger::result_of(const std::string& tx_id) const {
    auto it = results_.find(tx_id);
    return it == results_.end() ? nullptr : &it->second;
}

void Ledger::replay_blocks(const std::vector<Block>& blocks, WorldState& world,
                           CommitmentIndex& index,
                           std::unordered_map<std::string, TxResult>* results,
                           std::vector<LedgerEvent>* event_log) {
    std::string expect_prev(kZeroDigestHex);
    for (size_t h = 0; h < blocks.size(); ++h) {
        const Block& b = blocks[h];
        if (b.height != h)
            throw CorruptChain("block height " + std::to_string(b.height) + " at position " +
                               std::to_string(h));
        if (b.prev_hash != expect_prev) throw CorruptChain("prev hash mismatch at height " +
                                                           std::to_string(h));
        Bytes prev_raw = hex_decode(b.prev_hash);
        Digest32 prev{};
        std::copy(prev_raw.begin(), prev_raw.end(), prev.begin());
        for (const auto& ct : b.txs) {
            TxOutcome oc = execute_tx(world, index, ct.env, prev);
            if (oc.valid != ct.valid)
                throw CorruptChain("validity flag mismatch for tx " + ct.env.tx_id);
            if (results) (*results)[ct.env.tx_id] = TxResult{oc.valid, oc.error, oc.value};
            if (!oc.valid) continue;
            for (auto& [key, bytes] : oc.writes) world.put(key, std::move(bytes));
            for (auto& [hh, owner] : oc.data_hash_adds) index.data_hash_owner.emplace(hh, owner);
            for (auto& [hh, owner] : oc.model_hash_adds)
                index.model_hash_owner.emplace(hh, owner);
            if (event_log) {
                for (LedgerEvent ev : oc.events) {
                    ev.block_height = b.height;
                    ev.emit_time = b.cut_time;
                    ev.tx_id = ct.env.tx_id;
                    event_log->push_back(ev);
                }
            }
        }
        std::string recomputed = compute_block_hash(b.prev_hash, b.txs, b.height, b.cut_time);
        if (recomputed != b.block_hash)
            throw CorruptChain("block hash mismatch at height " + std::to_string(h));
        expect_prev = b.block_hash;
    }
}

WorldState Ledger::replay() const {
    WorldState fresh;
    CommitmentIndex index;
    replay_blocks(blocks_, fresh, index, nullptr, nullptr);
    return fresh;
}

Ledger Ledger::replay_from(const std::vector<Block>& blocks, LedgerConfig cfg) {
    Ledger out(cfg);
    replay_blocks(blocks, out.world_, out.index_, &out.results_, &out.event_log_);
    out.blocks_ = blocks;
    for (const auto& b : blocks)
        for (const auto& ct : b.txs) out.seen_tx_ids_.insert(ct.env.tx_id);
    if (!blocks.empty()) out.last_tick_ = blocks.back().cut_time;
    return out;
}

void Ledger::export_blocks(std::ostream& out) const {
    for (const Block& b : blocks_) {
        Json j{{"blockHash", b.block_hash},
               {"cutTime", b.cut_time},
               {"height", b.height},
               {"prevHash", b.prev_hash},
               {"txs", Json::array()}};
        for (const auto& ct : b.txs) j["txs"].push_back(tx_to_json(ct));
        out << j.dump() << "\n";
    }
}

std::vector<Block> Ledger::import_blocks(std::istream& in) {
    std::vector<Block> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Json j = Json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw CorruptChain("unparseable block line " + std::to_string(out.size()));
        Block b;
        try {
            b.height = j.at("height").get<uint64_t>();
            b.prev_hash = j.at("prevHash").get<std::string>();
            b.block_hash = j.at("blockHash").get<std::string>();
            b.cut_time = j.at("cutTime").get<int64_t>();
            for (const auto& t : j.at("txs")) b.txs.push_back(tx_from_json(t));
        } catch (const Json::exception& e) {
            throw CorruptChain(std::string("malformed block line: ") + e.what());
        }
        if (!is_hex(b.prev_hash) || b.prev_hash.size() != 64 || !is_hex(b.block_hash) ||
            b.block_hash.size() != 64)
            throw CorruptChain("malformed digest in block line");
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace ppmarket
