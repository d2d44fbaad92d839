#include "gridforge/auth.hpp"

#include <openssl/bio.h>
#include <openssl/err.h>
#include <openssl/evp.h>
#include <openssl/pem.h>
#include <openssl/rsa.h>
#include <openssl/x509.h>

#include <array>

#include "gridforge/text.hpp"

namespace gridforge::auth {

namespace {

[[noreturn]] void throw_openssl(const std::string& what) {
    unsigned long code = ERR_get_error();
    std::array<char, 256> buf{};
    if (code != 0) {
        ERR_error_string_n(code, buf.data(), buf.size());
    }
    throw CryptoError(what + (code != 0 ? std::string(": ") + buf.data() : std::string()));
}

std::shared_ptr<EVP_PKEY> wrap(EVP_PKEY* raw) {
    if (raw == nullptr) {
        throw_openssl("null EVP_PKEY");
    }
    return {raw, EVP_PKEY_free};
}

const EVP_MD* md_for(HashAlg alg) {
    return alg == HashAlg::md5 ? EVP_md5() : EVP_sha256();
}

struct BioDeleter {
    void operator()(BIO* bio) const { BIO_free(bio); }
};
using BioPtr = std::unique_ptr<BIO, BioDeleter>;

std::string bio_to_string(BIO* bio) {
    char* data = nullptr;
    long len = BIO_get_mem_data(bio, &data);
    return {data, static_cast<std::size_t>(len)};
}

struct CtxDeleter {
    void operator()(EVP_PKEY_CTX* ctx) const { EVP_PKEY_CTX_free(ctx); }
};
using CtxPtr = std::unique_ptr<EVP_PKEY_CTX, CtxDeleter>;

} // namespace

std::size_t digest_length(HashAlg alg) {
    return alg == HashAlg::md5 ? 16 : 32;
}

std::string_view to_string(HashAlg alg) {
    return alg == HashAlg::md5 ? "md5" : "sha256";
}

HashAlg hash_alg_from_string(std::string_view s) {
    if (s == "md5") {
        return HashAlg::md5;
    }
    if (s == "sha256") {
        return HashAlg::sha256;
    }
    throw CryptoError("unknown hash algorithm '" + std::string(s) + "'");
}

PublicKey PublicKey::from_pem(std::string_view pem) {
    BioPtr bio(BIO_new_mem_buf(pem.data(), static_cast<int>(pem.size())));
    return PublicKey(wrap(PEM_read_bio_PUBKEY(bio.get(), nullptr, nullptr, nullptr)));
}

PublicKey PublicKey::from_der_base64(std::string_view b64) {
    std::vector<std::uint8_t> der = base64_decode(b64);
    const unsigned char* p = der.data();
    return PublicKey(wrap(d2i_PUBKEY(nullptr, &p, static_cast<long>(der.size()))));
}

std::string PublicKey::pem() const {
    BioPtr bio(BIO_new(BIO_s_mem()));
    if (PEM_write_bio_PUBKEY(bio.get(), key_.get()) != 1) {
        throw_openssl("PEM_write_bio_PUBKEY");
    }
    return bio_to_string(bio.get());
}

std::string PublicKey::der_base64() const {
    int len = i2d_PUBKEY(key_.get(), nullptr);
    if (len <= 0) {
        throw_openssl("i2d_PUBKEY");
    }
    std::vector<std::uint8_t> der(static_cast<std::size_t>(len));
    unsigned char* p = der.data();
    i2d_PUBKEY(key_.get(), &p);
    return base64_encode(der);
}

int PublicKey::bits() const {
    return EVP_PKEY_get_bits(key_.get());
}

PrivateKey PrivateKey::from_pem(std::string_view pem) {
    BioPtr bio(BIO_new_mem_buf(pem.data(), static_cast<int>(pem.size())));
    return PrivateKey(wrap(PEM_read_bio_PrivateKey(bio.get(), nullptr, nullptr, nullptr)));
}

std::string PrivateKey::pem() const {
    BioPtr bio(BIO_new(BIO_s_mem()));
    if (PEM_write_bio_PrivateKey(bio.get(), key_.get(), nullptr, nullptr, 0, nullptr, nullptr) != 1) {
        throw_openssl("PEM_write_bio_PrivateKey");
    }
    return bio_to_string(bio.get());
}

PublicKey PrivateKey::public_part() const {
    // Round-trip through the SubjectPublicKeyInfo encoding; the result holds
    // no private parameters.
    int len = i2d_PUBKEY(key_.get(), nullptr);
    if (len <= 0) {
        throw_openssl("i2d_PUBKEY");
    }
    std::vector<std::uint8_t> der(static_cast<std::size_t>(len));
    unsigned char* p = der.data();
    i2d_PUBKEY(key_.get(), &p);
    const unsigned char* q = der.data();
    return PublicKey(wrap(d2i_PUBKEY(nullptr, &q, static_cast<long>(der.size()))));
}

int PrivateKey::bits() const {
    return EVP_PKEY_get_bits(key_.get());
}

KeyPair generate_keypair(int bits) {
    if (bits != 1024 && bits != 2048 && bits != 3072) {
        throw CryptoError("unsupported RSA key size " + std::to_string(bits));
    }
    CtxPtr ctx(EVP_PKEY_CTX_new_id(EVP_PKEY_RSA, nullptr));
    if (!ctx || EVP_PKEY_keygen_init(ctx.get()) <= 0 ||
        EVP_PKEY_CTX_set_rsa_keygen_bits(ctx.get(), bits) <= 0) {
        throw_openssl("RSA keygen init");
    }
    EVP_PKEY* raw = nullptr;
    if (EVP_PKEY_keygen(ctx.get(), &raw) <= 0) {
        throw_openssl("RSA keygen");
    }
    PrivateKey priv(wrap(raw));
    PublicKey pub = priv.public_part();
    return {std::move(priv), std::move(pub), bits};
}

std::vector<std::uint8_t> get_hash(std::span<const std::uint8_t> message, HashAlg alg) {
    std::vector<std::uint8_t> digest(EVP_MAX_MD_SIZE);
    unsigned int len = 0;
    if (EVP_Digest(message.data(), message.size(), digest.data(), &len, md_for(alg), nullptr) != 1) {
        throw_openssl("EVP_Digest");
    }
    digest.resize(len);
    return digest;
}

std::vector<std::uint8_t> get_hash(std::string_view message, HashAlg alg) {
    return get_hash(std::span(reinterpret_cast<const std::uint8_t*>(message.data()), message.size()),
                    alg);
}

std::vector<std::uint8_t> create_signature(std::span<const std::uint8_t> digest, HashAlg alg,
                                           const PrivateKey& key) {
    if (digest.size() != digest_length(alg)) {
        throw CryptoError("digest length does not match hash algorithm");
    }
    CtxPtr ctx(EVP_PKEY_CTX_new(key.handle(), nullptr));
    if (!ctx || EVP_PKEY_sign_init(ctx.get()) <= 0 ||
        EVP_PKEY_CTX_set_rsa_padding(ctx.get(), RSA_PKCS1_PADDING) <= 0 ||
        EVP_PKEY_CTX_set_signature_md(ctx.get(), md_for(alg)) <= 0) {
        throw_openssl("sign init");
    }
    std::size_t len = 0;
    if (EVP_PKEY_sign(ctx.get(), nullptr, &len, digest.data(), digest.size()) <= 0) {
        throw_openssl("sign size");
    }
    std::vector<std::uint8_t> signature(len);
    if (EVP_PKEY_sign(ctx.get(), signature.data(), &len, digest.data(), digest.size()) <= 0) {
        throw_openssl("sign");
    }
    signature.resize(len);
    return signature;
}

bool verify_signature(std::span<const std::uint8_t> digest, HashAlg alg,
                      std::span<const std::uint8_t> signature, const PublicKey& key) noexcept {
    if (digest.size() != digest_length(alg) || signature.empty()) {
        return false;
    }
    CtxPtr ctx(EVP_PKEY_CTX_new(key.handle(), nullptr));
    if (!ctx || EVP_PKEY_verify_init(ctx.get()) <= 0 ||
        EVP_PKEY_CTX_set_rsa_padding(ctx.get(), RSA_PKCS1_PADDING) <= 0 ||
        EVP_PKEY_CTX_set_signature_md(ctx.get(), md_for(alg)) <= 0) {
        ERR_clear_error();
        return false;
    }
    int rc = EVP_PKEY_verify(ctx.get(), signature.data(), signature.size(), digest.data(),
                             digest.size());
    ERR_clear_error();
    return rc == 1;
}

std::vector<std::uint8_t> encode_payload(const std::map<std::string, std::string>& fields) {
    std::string out;
    for (const auto& [key, value] : fields) {
        if (!text::is_plain_name(key)) {
            throw CryptoError("payload key '" + key + "' is not a plain name");
        }
        if (value.find('\n') != std::string::npos) {
            throw CryptoError("payload value for '" + key + "' contains a newline");
        }
        out += key;
        out += '=';
        out += value;
        out += '\n';
    }
    return {out.begin(), out.end()};
}

std::map<std::string, std::string> decode_payload(std::span<const std::uint8_t> payload) {
    std::map<std::string, std::string> fields;
    std::string_view view(reinterpret_cast<const char*>(payload.data()), payload.size());
    while (!view.empty()) {
        std::size_t nl = view.find('\n');
        if (nl == std::string_view::npos) {
            throw CryptoError("payload line missing LF terminator");
        }
        std::string_view line = view.substr(0, nl);
        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw CryptoError("payload line missing key=value form");
        }
        fields.emplace(std::string(line.substr(0, eq)), std::string(line.substr(eq + 1)));
        view.remove_prefix(nl + 1);
    }
    return fields;
}

SignedEnvelope seal(const std::map<std::string, std::string>& fields, const PrivateKey& key,
                    HashAlg alg, std::string signer_id) {
    SignedEnvelope envelope;
    envelope.payload = encode_payload(fields);
    envelope.digest = get_hash(envelope.payload, alg);
    envelope.signature = create_signature(envelope.digest, alg, key);
    envelope.signer_id = std::move(signer_id);
    envelope.hash_alg = alg;
    return envelope;
}

bool envelope_valid(const SignedEnvelope& envelope, const PublicKey& key) noexcept {
    try {
        if (get_hash(envelope.payload, envelope.hash_alg) != envelope.digest) {
            return false;
        }
    } catch (const CryptoError&) {
        return false;
    }
    return verify_signature(envelope.digest, envelope.hash_alg, envelope.signature, key);
}

void save_private_key(const std::filesystem::path& path, const PrivateKey& key) {
    text::write_file_atomic(path, key.pem());
}

void save_public_key(const std::filesystem::path& path, const PublicKey& key) {
    text::write_file_atomic(path, key.pem());
}

PrivateKey load_private_key(const std::filesystem::path& path) {
    return PrivateKey::from_pem(text::read_file(path));
}

PublicKey load_public_key(const std::filesystem::path& path) {
    return PublicKey::from_pem(text::read_file(path));
}

std::string base64_encode(std::span<const std::uint8_t> data) {
    std::string out((data.size() + 2) / 3 * 4 + 1, '\0');
    int len = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), data.data(),
                              static_cast<int>(data.size()));
    out.resize(static_cast<std::size_t>(len));
    return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view b64) {
    if (b64.size() % 4 != 0) {
        throw CryptoError("base64 length not a multiple of 4");
    }
    std::vector<std::uint8_t> out(b64.size() / 4 * 3);
    int len = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(b64.data()),
                              static_cast<int>(b64.size()));
    if (len < 0) {
        throw CryptoError("invalid base64");
    }
    std::size_t pad = 0;
    while (pad < 2 && pad < b64.size() && b64[b64.size() - 1 - pad] == '=') {
        ++pad;
    }
    out.resize(static_cast<std::size_t>(len) - pad);
    return out;
}

std::string hex(std::span<const std::uint8_t> data) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (std::uint8_t b : data) {
        out += digits[b >> 4];
        out += digits[b & 0xf];
    }
    return out;
}

} // namespace gridforge::auth
