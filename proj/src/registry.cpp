#include "gridforge/registry.hpp"

#include <algorithm>

#include "gridforge/text.hpp"

namespace gridforge::gis {

namespace {

std::string field(const std::map<std::string, std::string>& fields, const std::string& key) {
    auto it = fields.find(key);
    if (it == fields.end()) {
        throw RegistryError("registration payload missing field '" + key + "'");
    }
    return it->second;
}

double real_field(const std::map<std::string, std::string>& fields, const std::string& key) {
    try {
        return text::parse_real(field(fields, key));
    } catch (const std::invalid_argument& e) {
        throw RegistryError("registration payload field '" + key + "': " + e.what());
    }
}

} // namespace

std::string_view to_string(Availability a) {
    return a == Availability::available ? "available" : "busy";
}

Availability availability_from_string(std::string_view s) {
    if (s == "available") {
        return Availability::available;
    }
    if (s == "busy") {
        return Availability::busy;
    }
    throw RegistryError("unknown availability '" + std::string(s) + "'");
}

std::string_view to_string(AuthFailure f) {
    switch (f) {
    case AuthFailure::unknown_user: return "unknown-user";
    case AuthFailure::bad_signature: return "bad-signature";
    case AuthFailure::none: break;
    }
    return "none";
}

std::string Registry::register_user(const auth::SignedEnvelope& request) {
    std::map<std::string, std::string> fields;
    try {
        fields = auth::decode_payload(request.payload);
    } catch (const auth::CryptoError& e) {
        throw RegistryError(std::string("malformed registration payload: ") + e.what());
    }
    std::string user_name = field(fields, "user_name");
    std::string pubkey_b64 = field(fields, "pubkey");

    // Self-signed enrollment: the signature must verify under the key the
    // request itself carries.
    auth::PublicKey key = [&] {
        try {
            return auth::PublicKey::from_der_base64(pubkey_b64);
        } catch (const auth::CryptoError& e) {
            throw RegistryError(std::string("invalid public key in registration: ") + e.what());
        }
    }();
    if (!auth::envelope_valid(request, key)) {
        throw RegistryError("user registration rejected: invalid signature");
    }
    if (!text::is_plain_name(user_name)) {
        throw RegistryError("user name '" + user_name + "' is not a plain name");
    }
    for (const auto& [id, account] : users_) {
        if (account.user_name == user_name) {
            throw RegistryError("user name '" + user_name + "' is already registered");
        }
    }

    UserAccount account;
    account.user_id = "U" + text::zero_pad(next_user_seq_, 3);
    account.user_name = user_name;
    account.pubkey_pem = key.pem();
    account.registered_at = fields.count("user_time") != 0 ? real_field(fields, "user_time") : 0.0;

    users_.emplace(account.user_id, account);
    ++next_user_seq_;
    return account.user_id;
}

std::string Registry::register_resource(const auth::SignedEnvelope& request,
                                        const std::string& owner_id) {
    auto owner = users_.find(owner_id);
    if (owner == users_.end()) {
        throw RegistryError("resource registration rejected: unknown owner '" + owner_id + "'");
    }
    auth::PublicKey owner_key = auth::PublicKey::from_pem(owner->second.pubkey_pem);
    if (!auth::envelope_valid(request, owner_key)) {
        throw RegistryError("resource registration rejected: invalid signature");
    }

    std::map<std::string, std::string> fields;
    try {
        fields = auth::decode_payload(request.payload);
    } catch (const auth::CryptoError& e) {
        throw RegistryError(std::string("malformed registration payload: ") + e.what());
    }

    Resource resource;
    resource.name = field(fields, "resource_name");
    resource.enter_time = real_field(fields, "enter_time");
    resource.mips = real_field(fields, "mips");
    resource.bandwidth_mbps = real_field(fields, "bandwidth_mbps");
    resource.memory_mb = real_field(fields, "memory_mb");
    if (!text::is_plain_name(resource.name)) {
        throw RegistryError("resource name '" + resource.name + "' is not a plain name");
    }
    try {
        validate(resource);
    } catch (const std::invalid_argument& e) {
        throw RegistryError(std::string("resource registration rejected: ") + e.what());
    }

    resource.resource_id = resource.name;
    for (int suffix = 2; resources_.count(resource.resource_id) != 0; ++suffix) {
        resource.resource_id = resource.name + "-" + std::to_string(suffix);
    }

    resources_.emplace(resource.resource_id,
                       ResourceEntry{resource, Availability::available, owner_id});
    return resource.resource_id;
}

std::vector<Resource> Registry::available_resources() const {
    std::vector<Resource> out;
    for (const auto& [id, entry] : resources_) {
        if (entry.availability == Availability::available) {
            out.push_back(entry.resource);
        }
    }
    std::sort(out.begin(), out.end(), [](const Resource& a, const Resource& b) {
        if (a.enter_time != b.enter_time) {
            return a.enter_time < b.enter_time;
        }
        return a.resource_id < b.resource_id;
    });
    return out;
}

const Resource& Registry::resource_characteristics(const std::string& resource_id) const {
    auto it = resources_.find(resource_id);
    if (it == resources_.end()) {
        throw RegistryError("unknown resource '" + resource_id + "'");
    }
    return it->second.resource;
}

AuthVerdict Registry::authenticate_submission(const auth::SignedEnvelope& envelope,
                                              const std::string& claimed_user) const noexcept {
    auto it = users_.find(claimed_user);
    if (it == users_.end()) {
        return {false, AuthFailure::unknown_user};
    }
    try {
        auth::PublicKey key = auth::PublicKey::from_pem(it->second.pubkey_pem);
        if (!auth::envelope_valid(envelope, key)) {
            return {false, AuthFailure::bad_signature};
        }
    } catch (...) {
        return {false, AuthFailure::bad_signature};
    }
    return {true, AuthFailure::none};
}

void Registry::set_availability(const std::string& resource_id, Availability availability) {
    auto it = resources_.find(resource_id);
    if (it == resources_.end()) {
        throw RegistryError("unknown resource '" + resource_id + "'");
    }
    it->second.availability = availability;
}

std::optional<std::string> Registry::user_id_by_name(std::string_view name) const {
    for (const auto& [id, account] : users_) {
        if (account.user_name == name) {
            return id;
        }
    }
    return std::nullopt;
}

std::string Registry::snapshot_text() const {
    std::string out;
    out += "[users]\n";
    for (const auto& [id, account] : users_) {
        out += id + "|" + account.user_name + "|" + text::format_real(account.registered_at) +
               "|" + id + ".pub\n";
    }
    out += "[resources]\n";
    for (const auto& [id, entry] : resources_) {
        const Resource& r = entry.resource;
        out += id + "|" + r.name + "|" + text::format_real(r.enter_time) + "|" +
               text::format_real(r.mips) + "|" + text::format_real(r.bandwidth_mbps) + "|" +
               text::format_real(r.memory_mb) + "|" + std::string(to_string(entry.availability)) +
               "|" + entry.owner_id + "\n";
    }
    return out;
}

void Registry::save(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    for (const auto& [id, account] : users_) {
        text::write_file_atomic(dir / (id + ".pub"), account.pubkey_pem);
    }
    text::write_file_atomic(dir / "snapshot.txt", snapshot_text());
}

Registry Registry::load(const std::filesystem::path& dir) {
    Registry registry;
    std::string content = text::read_file(dir / "snapshot.txt");
    int max_seq = 0;
    for (const auto& section : text::parse_sections(content)) {
        if (section.name == "users") {
            for (const auto& line : section.lines) {
                if (line.fields.size() != 4) {
                    throw RegistryError("snapshot line " + std::to_string(line.number) +
                                        ": expected 4 user fields");
                }
                UserAccount account;
                account.user_id = line.fields[0];
                account.user_name = line.fields[1];
                account.registered_at = text::parse_real(line.fields[2]);
                account.pubkey_pem = text::read_file(dir / line.fields[3]);
                if (account.user_id.size() > 1 && account.user_id[0] == 'U') {
                    max_seq = std::max(max_seq, static_cast<int>(text::parse_int(
                                                    account.user_id.substr(1))));
                }
                if (!registry.users_.emplace(account.user_id, account).second) {
                    throw RegistryError("snapshot line " + std::to_string(line.number) +
                                        ": duplicate user id '" + account.user_id + "'");
                }
            }
        } else if (section.name == "resources") {
            for (const auto& line : section.lines) {
                if (line.fields.size() != 8) {
                    throw RegistryError("snapshot line " + std::to_string(line.number) +
                                        ": expected 8 resource fields");
                }
                ResourceEntry entry;
                entry.resource.resource_id = line.fields[0];
                entry.resource.name = line.fields[1];
                entry.resource.enter_time = text::parse_real(line.fields[2]);
                entry.resource.mips = text::parse_real(line.fields[3]);
                entry.resource.bandwidth_mbps = text::parse_real(line.fields[4]);
                entry.resource.memory_mb = text::parse_real(line.fields[5]);
                entry.availability = availability_from_string(line.fields[6]);
                entry.owner_id = line.fields[7];
                std::string id = entry.resource.resource_id;
                if (!registry.resources_.emplace(id, std::move(entry)).second) {
                    throw RegistryError("snapshot line " + std::to_string(line.number) +
                                        ": duplicate resource id '" + id + "'");
                }
            }
        } else {
            throw RegistryError("snapshot: unknown section [" + section.name + "]");
        }
    }
    registry.next_user_seq_ = max_seq + 1;
    return registry;
}

} // namespace gridforge::gis
