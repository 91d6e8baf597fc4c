#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ppmarket/sha256.hpp"

namespace ppmarket {

// The 15 externally invocable transactions.
enum class TxType {
    CreateDO,
    CreateCO,
    CreateMO,
    CreateDS,
    CreateDSS,
    CreateCI,
    JoinCI,
    VerifyCI,
    CreateMod,
    RequestTC,
    ApproveTC,
    StartRound,
    UpdateTJ,
    FinishTC,
    FlagFraud,
};

inline constexpr std::array<TxType, 15> kAllTxTypes = {
    TxType::CreateDO,  TxType::CreateCO,   TxType::CreateMO,  TxType::CreateDS,
    TxType::CreateDSS, TxType::CreateCI,   TxType::JoinCI,    TxType::VerifyCI,
    TxType::CreateMod, TxType::RequestTC,  TxType::ApproveTC, TxType::StartRound,
    TxType::UpdateTJ,  TxType::FinishTC,   TxType::FlagFraud,
};

std::string_view to_string(TxType t);
std::optional<TxType> tx_type_from(std::string_view s);

// One emitted notification per state-changing committed transaction. The
// type reflects the transaction's outcome, so the count of events always
// equals the count of state-changing commits.
enum class EventType {
    MemberCreated,
    DSCreated,
    DSSCreated,
    CICreated,
    CIJoined,
    CIVerified,
    ModCreated,
    TCRequested,
    TCApproved,
    RoundStarted,
    TJUpdated,
    RoundComplete,
    TCFinished,
    FraudFlagged,
};

std::string_view to_string(EventType t);

struct TransactionEnvelope {
    std::string tx_id;
    TxType tx_type = TxType::CreateDO;
    std::string caller;  // member pseudo-id; free-form for the Create* calls
    std::vector<std::string> args;
    int64_t submit_time = 0;  // simulation ms
};

struct CommittedTx {
    TransactionEnvelope env;
    bool valid = false;
};

struct Block {
    uint64_t height = 0;
    std::string prev_hash;  // 64 hex chars; block 0 chains from all zeros
    std::vector<CommittedTx> txs;
    int64_t cut_time = 0;
    std::string block_hash;  // 64 hex chars
};

/// Canonical JSON for the tx list, the hashed portion of a block.
std::string canonical_txs_json(const std::vector<CommittedTx>& txs);

/// block_hash preimage: raw prev hash (32 bytes) || canonical txs JSON ||
/// '|' || decimal height || '|' || decimal cut time.
std::string compute_block_hash(const std::string& prev_hash_hex,
                               const std::vector<CommittedTx>& txs, uint64_t height,
                               int64_t cut_time);

struct LedgerEvent {
    EventType type = EventType::MemberCreated;
    std::string key;  // asset key of the subject
    std::map<std::string, std::string> payload;
    uint64_t block_height = 0;
    int64_t emit_time = 0;
    std::string tx_id;
};

class WorldState {
public:
    std::optional<std::string> get(const std::string& key) const;
    uint64_t version(const std::string& key) const;
    void put(const std::string& key, std::string bytes);  // bumps the key version

    const std::map<std::string, std::string>& entries() const { return entries_; }
    const std::map<std::string, uint64_t>& versions() const { return versions_; }

    bool operator==(const WorldState&) const = default;

private:
    std::map<std::string, std::string> entries_;
    std::map<std::string, uint64_t> versions_;
};

/// Derived lookup index over committed commitments. Rebuilt by re-execution
/// on replay; never serialized into world state.
struct CommitmentIndex {
    std::unordered_map<std::string, std::string> data_hash_owner;   // hash -> CI id
    std::unordered_map<std::string, std::string> model_hash_owner;  // tc|round|hash -> TJ id
};

struct TxOutcome {
    bool valid = false;       // writes applied; recorded with validity flag
    std::string error;        // error code, set for invalid or rejected txs
    std::string value;        // operation return payload (ids etc.)
    std::vector<LedgerEvent> events;
    std::vector<std::pair<std::string, std::string>> writes;  // key -> bytes, apply order
    std::vector<std::pair<std::string, std::string>> data_hash_adds;
    std::vector<std::pair<std::string, std::string>> model_hash_adds;
};

struct TxResult {
    bool valid = false;
    std::string error;
    std::string value;
};

struct SubmitReceipt {
    std::string tx_id;
    bool accepted = false;
    std::string error;  // MalformedEnvelope | UnknownTxType
};

struct ClockRegression : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CorruptChain : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class EventStream {
public:
    std::optional<LedgerEvent> poll();
    bool empty() const { return queue_.empty(); }

private:
    friend class Ledger;
    std::set<EventType> filter_;  // empty set means "all types"
    std::deque<LedgerEvent> queue_;
};

struct LedgerConfig {
    size_t block_size_limit = 500;
    int64_t block_timeout_ms = 1000;
    // Carried verbatim for report metadata; the engine does not interpret it.
    std::string formation_policy = "2:3:1";
};

/// Single-writer ledger: submissions funnel into one ordered pending queue;
/// tick() cuts blocks per the size/timeout policy and commits them through
/// the chaincode dispatcher in order.
class Ledger {
public:
    explicit Ledger(LedgerConfig cfg = {});

    SubmitReceipt submit(TransactionEnvelope env);

    /// Cuts and commits every due block. Throws ClockRegression if time
    /// moves backwards.
    std::vector<Block> tick(int64_t now);

    std::optional<std::string> get_state(const std::string& key) const;
    uint64_t get_version(const std::string& key) const;

    std::shared_ptr<EventStream> subscribe(std::set<EventType> filter = {});

    const std::vector<Block>& blocks() const { return blocks_; }
    const WorldState& world() const { return world_; }
    const std::vector<LedgerEvent>& event_log() const { return event_log_; }
    const TxResult* result_of(const std::string& tx_id) const;
    size_t pending_count() const { return pending_.size(); }
    const LedgerConfig& config() const { return cfg_; }

    /// Re-executes the whole block log on a fresh state and verifies the
    /// hash chain. Throws CorruptChain on any mismatch.
    WorldState replay() const;

    void export_blocks(std::ostream& out) const;  // newline-delimited JSON
    static std::vector<Block> import_blocks(std::istream& in);

    /// Builds a ledger (world state, results, event log) from an imported
    /// block log, verifying the chain. Throws CorruptChain.
    static Ledger replay_from(const std::vector<Block>& blocks, LedgerConfig cfg = {});

private:
    struct Pending {
        TransactionEnvelope env;
    };

    Block cut_block(int64_t now, size_t count);
    void commit_block(Block& block);

    static void replay_blocks(const std::vector<Block>& blocks, WorldState& world,
                              CommitmentIndex& index,
                              std::unordered_map<std::string, TxResult>* results,
                              std::vector<LedgerEvent>* event_log);

    LedgerConfig cfg_;
    std::deque<Pending> pending_;
    std::vector<Block> blocks_;
    WorldState world_;
    CommitmentIndex index_;
    std::vector<LedgerEvent> event_log_;
    std::unordered_map<std::string, TxResult> results_;
    std::set<std::string> seen_tx_ids_;
    std::vector<std::shared_ptr<EventStream>> streams_;
    int64_t last_tick_ = 0;
    bool ticked_ = false;
};

}  // namespace ppmarket
