#pragma once

// Envelope builders for registry-level tests.

#include <string>

#include "gridforge/auth.hpp"
#include "gridforge/model.hpp"
#include "gridforge/text.hpp"

namespace testsupport {

inline gridforge::auth::SignedEnvelope user_enrollment(
    const std::string& name, const gridforge::auth::KeyPair& keys,
    gridforge::auth::HashAlg alg = gridforge::auth::HashAlg::sha256, double user_time = 0.0) {
    return gridforge::auth::seal({{"user_name", name},
                                  {"pubkey", keys.public_part.der_base64()},
                                  {"user_time", gridforge::text::format_real(user_time)}},
                                 keys.private_part, alg, name);
}

inline gridforge::auth::SignedEnvelope resource_registration(
    const std::string& name, double enter_time, double mips, double bandwidth, double memory,
    const gridforge::auth::PrivateKey& owner_key,
    gridforge::auth::HashAlg alg = gridforge::auth::HashAlg::sha256) {
    using gridforge::text::format_real;
    return gridforge::auth::seal({{"resource_name", name},
                                  {"enter_time", format_real(enter_time)},
                                  {"mips", format_real(mips)},
                                  {"bandwidth_mbps", format_real(bandwidth)},
                                  {"memory_mb", format_real(memory)}},
                                 owner_key, alg, name);
}

inline gridforge::auth::SignedEnvelope job_submission(
    const gridforge::Job& job, const std::string& user_name,
    const gridforge::auth::PrivateKey& signing_key,
    gridforge::auth::HashAlg alg = gridforge::auth::HashAlg::sha256) {
    using gridforge::text::format_real;
    return gridforge::auth::seal({{"job_id", job.job_id},
                                  {"length_mi", format_real(job.length_mi)},
                                  {"memory_mb", format_real(job.memory_mb)},
                                  {"submit_seq", std::to_string(job.submit_seq)},
                                  {"user_name", user_name}},
                                 signing_key, alg, job.user_id);
}

} // namespace testsupport
