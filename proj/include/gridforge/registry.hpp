#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gridforge/auth.hpp"
#include "gridforge/model.hpp"

namespace gridforge::gis {

class RegistryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct UserAccount {
    std::string user_id;
    std::string user_name;
    std::string pubkey_pem;
    double registered_at = 0.0;
};

enum class Availability { available, busy };

std::string_view to_string(Availability a);
Availability availability_from_string(std::string_view s);

struct ResourceEntry {
    Resource resource;
    Availability availability = Availability::available;
    std::string owner_id;
};

enum class AuthFailure { none, unknown_user, bad_signature };

std::string_view to_string(AuthFailure f);

struct AuthVerdict {
    bool accepted = false;
    AuthFailure reason = AuthFailure::none;
};

/// The Grid Information Service.
///
/// Owns user accounts and the resource table. All mutations go through this
/// class; queries hand out copies or const references, so a Registry value
/// can be snapshotted and shared freely. Registration requests arrive as
/// signed envelopes whose payload carries the registration tuple as
/// canonical key=value fields (see auth::encode_payload).
class Registry {
public:
    /// Registers a user from a self-signed enrollment request.
    ///
    /// Payload fields: user_name, pubkey (base64 DER), user_time.
    /// The signature must verify under the public key carried in the
    /// payload. Assigns and returns a fresh user id ("U001", ...).
    /// Throws RegistryError on bad signatures or duplicate user names;
    /// the registry is unchanged on failure.
    std::string register_user(const auth::SignedEnvelope& request);

    /// Registers a resource owned by `owner_id`.
    ///
    /// Payload fields: resource_name, enter_time, mips, bandwidth_mbps,
    /// memory_mb. The signature must verify under the owner's stored key.
    /// The resource id is the registered name when unique, otherwise
    /// name-2, name-3, ... Resources start out available.
    std::string register_resource(const auth::SignedEnvelope& request, const std::string& owner_id);

    /// Resources currently marked available, in first-come-first-serve
    /// order: ascending enter_time, ties broken by resource_id.
    std::vector<Resource> available_resources() const;

    /// Full characteristics tuple. Throws RegistryError for unknown ids.
    const Resource& resource_characteristics(const std::string& resource_id) const;

    /// Verifies a job submission claimed by `claimed_user` against that
    /// user's stored key. Never throws; the verdict carries the reason.
    AuthVerdict authenticate_submission(const auth::SignedEnvelope& envelope,
                                        const std::string& claimed_user) const noexcept;

    void set_availability(const std::string& resource_id, Availability availability);

    const std::map<std::string, UserAccount>& users() const { return users_; }
    const std::map<std::string, ResourceEntry>& resources() const { return resources_; }
    std::optional<std::string> user_id_by_name(std::string_view name) const;

    /// Serialized snapshot (without key material); also used for
    /// state-equality checks in tests.
    std::string snapshot_text() const;

    /// Persists the snapshot plus one <user_id>.pub PEM file per user.
    /// Both writes are atomic (write-temp-then-rename).
    void save(const std::filesystem::path& dir) const;
    static Registry load(const std::filesystem::path& dir);

private:
    std::map<std::string, UserAccount> users_;
    std::map<std::string, ResourceEntry> resources_;
    int next_user_seq_ = 1;
};

} // namespace gridforge::gis
