#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

typedef struct evp_pkey_st EVP_PKEY;

namespace gridforge::auth {

class CryptoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class HashAlg { md5, sha256 };

std::size_t digest_length(HashAlg alg);
std::string_view to_string(HashAlg alg);
HashAlg hash_alg_from_string(std::string_view s);

/// RSA public half. Holds an immutable OpenSSL key handle.
class PublicKey {
public:
    static PublicKey from_pem(std::string_view pem);
    static PublicKey from_der_base64(std::string_view b64);

    std::string pem() const;
    std::string der_base64() const;
    int bits() const;
    EVP_PKEY* handle() const { return key_.get(); }

private:
    friend class PrivateKey;
    explicit PublicKey(std::shared_ptr<EVP_PKEY> key) : key_(std::move(key)) {}
    std::shared_ptr<EVP_PKEY> key_;
};

struct KeyPair;
KeyPair generate_keypair(int bits);

/// Full RSA private parameters.
class PrivateKey {
public:
    static PrivateKey from_pem(std::string_view pem);

    std::string pem() const;
    PublicKey public_part() const;
    int bits() const;
    EVP_PKEY* handle() const { return key_.get(); }

private:
    explicit PrivateKey(std::shared_ptr<EVP_PKEY> key) : key_(std::move(key)) {}
    friend struct KeyPair;
    friend KeyPair generate_keypair(int bits);
    std::shared_ptr<EVP_PKEY> key_;
};

/// Fresh RSA keypair from generate_keypair; bits is 1024, 2048 or 3072.
struct KeyPair {
    PrivateKey private_part;
    PublicKey public_part;
    int bits = 0;
};

std::vector<std::uint8_t> get_hash(std::span<const std::uint8_t> message, HashAlg alg);
std::vector<std::uint8_t> get_hash(std::string_view message, HashAlg alg);

/// PKCS#1 v1.5 signature over a precomputed digest. The digest length must
/// match `alg`. Signature length equals the modulus length in bytes.
std::vector<std::uint8_t> create_signature(std::span<const std::uint8_t> digest, HashAlg alg,
                                           const PrivateKey& key);

/// True iff `signature` is a valid PKCS#1 v1.5 signature of `digest`.
/// Malformed inputs return false, never throw.
bool verify_signature(std::span<const std::uint8_t> digest, HashAlg alg,
                      std::span<const std::uint8_t> signature, const PublicKey& key) noexcept;

/// A registration/submission payload with digest and signature.
struct SignedEnvelope {
    std::vector<std::uint8_t> payload;
    std::vector<std::uint8_t> digest;
    std::vector<std::uint8_t> signature;
    std::string signer_id;
    HashAlg hash_alg = HashAlg::sha256;
};

/// Canonical request encoding: UTF-8 `key=value` lines sorted by key,
/// LF-terminated. Keys must be plain names; values must not contain LF.
std::vector<std::uint8_t> encode_payload(const std::map<std::string, std::string>& fields);
std::map<std::string, std::string> decode_payload(std::span<const std::uint8_t> payload);

/// Encodes the fields canonically, hashes and signs them.
SignedEnvelope seal(const std::map<std::string, std::string>& fields, const PrivateKey& key,
                    HashAlg alg, std::string signer_id);

/// Digest matches the payload and the signature verifies under `key`.
bool envelope_valid(const SignedEnvelope& envelope, const PublicKey& key) noexcept;

// Key files: PEM, one key per file.
void save_private_key(const std::filesystem::path& path, const PrivateKey& key);
void save_public_key(const std::filesystem::path& path, const PublicKey& key);
PrivateKey load_private_key(const std::filesystem::path& path);
PublicKey load_public_key(const std::filesystem::path& path);

std::string base64_encode(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> base64_decode(std::string_view b64);
std::string hex(std::span<const std::uint8_t> data);

} // namespace gridforge::auth
