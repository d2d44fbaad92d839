#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <random>
#include <string>

#include "gridforge/auth.hpp"
#include "support/md5_ref.hpp"

using namespace gridforge;

TEST_CASE("md5 digests match the independent reference implementation") {
    // Reference values recomputed by the RFC 1321 transcription in
    // support/md5_ref.hpp, which shares no code with the production path.
    CHECK(testsupport::Md5Ref::hex_digest("") == "d41d8cd98f00b204e9800998ecf8427e");
    CHECK(testsupport::Md5Ref::hex_digest("abc") == "900150983cd24fb0d6963f7d28e17f72");

    CHECK(auth::hex(auth::get_hash("", auth::HashAlg::md5)) ==
          "d41d8cd98f00b204e9800998ecf8427e");
    CHECK(auth::hex(auth::get_hash("abc", auth::HashAlg::md5)) ==
          "900150983cd24fb0d6963f7d28e17f72");

    std::mt19937 rng(29);
    for (int i = 0; i < 50; ++i) {
        std::string message;
        int length = static_cast<int>(rng() % 300);
        for (int k = 0; k < length; ++k) {
            message += static_cast<char>(rng() % 256);
        }
        CHECK(auth::hex(auth::get_hash(message, auth::HashAlg::md5)) ==
              testsupport::Md5Ref::hex_digest(message));
    }
}

TEST_CASE("digests are deterministic with fixed lengths") {
    auto d1 = auth::get_hash("same message", auth::HashAlg::sha256);
    auto d2 = auth::get_hash("same message", auth::HashAlg::sha256);
    CHECK(d1 == d2);
    CHECK(d1.size() == 32);
    CHECK(auth::get_hash("x", auth::HashAlg::md5).size() == 16);
    CHECK(auth::digest_length(auth::HashAlg::md5) == 16);
    CHECK(auth::digest_length(auth::HashAlg::sha256) == 32);
}

TEST_CASE("keypair generation honors the size contract") {
    auth::KeyPair small = auth::generate_keypair(1024);
    CHECK(small.private_part.bits() == 1024);
    CHECK(small.public_part.bits() == 1024);

    auth::KeyPair normal = auth::generate_keypair(2048);
    CHECK(normal.public_part.bits() == 2048);

    // distinct moduli across calls
    auth::KeyPair other = auth::generate_keypair(1024);
    CHECK(other.public_part.pem() != small.public_part.pem());

    CHECK_THROWS_AS(auth::generate_keypair(999), auth::CryptoError);
}

TEST_CASE("signature round-trip and wrong-key rejection") {
    auth::KeyPair alice = auth::generate_keypair(1024);
    auth::KeyPair bob = auth::generate_keypair(1024);

    auto digest = auth::get_hash("hello grid", auth::HashAlg::sha256);
    auto signature = auth::create_signature(digest, auth::HashAlg::sha256, alice.private_part);
    CHECK(signature.size() == 1024 / 8);
    CHECK(auth::verify_signature(digest, auth::HashAlg::sha256, signature, alice.public_part));
    CHECK_FALSE(auth::verify_signature(digest, auth::HashAlg::sha256, signature, bob.public_part));

    auth::KeyPair wide = auth::generate_keypair(2048);
    auto wide_sig = auth::create_signature(digest, auth::HashAlg::sha256, wide.private_part);
    CHECK(wide_sig.size() == 256);
}

TEST_CASE("digest length must match the declared algorithm") {
    auth::KeyPair key = auth::generate_keypair(1024);
    auto md5_digest = auth::get_hash("x", auth::HashAlg::md5);
    CHECK_THROWS_AS(auth::create_signature(md5_digest, auth::HashAlg::sha256, key.private_part),
                    auth::CryptoError);
}

TEST_CASE("every single-bit flip of a signature fails verification") {
    auth::KeyPair key = auth::generate_keypair(1024);
    auto digest = auth::get_hash("flip sweep", auth::HashAlg::md5);
    auto signature = auth::create_signature(digest, auth::HashAlg::md5, key.private_part);
    REQUIRE(auth::verify_signature(digest, auth::HashAlg::md5, signature, key.public_part));
    for (std::size_t byte = 0; byte < signature.size(); ++byte) {
        for (int bit = 0; bit < 8; ++bit) {
            auto tampered = signature;
            tampered[byte] ^= static_cast<std::uint8_t>(1u << bit);
            CHECK_FALSE(
                auth::verify_signature(digest, auth::HashAlg::md5, tampered, key.public_part));
        }
    }
}

TEST_CASE("malformed signatures return false instead of throwing") {
    auth::KeyPair key = auth::generate_keypair(1024);
    auto digest = auth::get_hash("m", auth::HashAlg::sha256);
    CHECK_FALSE(auth::verify_signature(digest, auth::HashAlg::sha256, {}, key.public_part));
    std::vector<std::uint8_t> garbage(5, 0xab);
    CHECK_FALSE(auth::verify_signature(digest, auth::HashAlg::sha256, garbage, key.public_part));
    std::vector<std::uint8_t> oversized(4096, 0xcd);
    CHECK_FALSE(auth::verify_signature(digest, auth::HashAlg::sha256, oversized, key.public_part));
}

TEST_CASE("property: tampered payloads never verify") {
    auth::KeyPair key = auth::generate_keypair(1024);
    std::mt19937 rng(31);
    for (auth::HashAlg alg : {auth::HashAlg::md5, auth::HashAlg::sha256}) {
        for (int i = 0; i < 50; ++i) {
            std::string message = "msg-" + std::to_string(i);
            int extra = static_cast<int>(rng() % 40);
            for (int k = 0; k < extra; ++k) {
                message += static_cast<char>('a' + rng() % 26);
            }
            auto digest = auth::get_hash(message, alg);
            auto signature = auth::create_signature(digest, alg, key.private_part);
            CHECK(auth::verify_signature(digest, alg, signature, key.public_part));

            std::string mutated = message;
            std::size_t pos = rng() % mutated.size();
            mutated[pos] = static_cast<char>(mutated[pos] ^ (1 + rng() % 255));
            auto mutated_digest = auth::get_hash(mutated, alg);
            CHECK_FALSE(auth::verify_signature(mutated_digest, alg, signature, key.public_part));
        }
    }
}

TEST_CASE("canonical payload encoding is sorted, LF-terminated key=value") {
    auto payload = auth::encode_payload({{"b", "2"}, {"a", "1"}, {"c", "three"}});
    std::string text(payload.begin(), payload.end());
    CHECK(text == "a=1\nb=2\nc=three\n");
    auto fields = auth::decode_payload(payload);
    CHECK(fields.at("a") == "1");
    CHECK(fields.at("c") == "three");

    CHECK_THROWS_AS(auth::encode_payload({{"bad key", "x"}}), auth::CryptoError);
    CHECK_THROWS_AS(auth::encode_payload({{"k", "line\nbreak"}}), auth::CryptoError);
    std::vector<std::uint8_t> truncated = {'a', '=', '1'};
    CHECK_THROWS_AS(auth::decode_payload(truncated), auth::CryptoError);
}

TEST_CASE("sealed envelopes verify and expose tampering") {
    auth::KeyPair key = auth::generate_keypair(1024);
    auth::SignedEnvelope envelope =
        auth::seal({{"user_name", "alice"}, {"role", "owner"}}, key.private_part,
                   auth::HashAlg::sha256, "alice");
    CHECK(envelope.digest.size() == 32);
    CHECK(auth::envelope_valid(envelope, key.public_part));

    auth::SignedEnvelope tampered = envelope;
    tampered.payload[0] ^= 0x01;
    CHECK_FALSE(auth::envelope_valid(tampered, key.public_part));
}

TEST_CASE("key files round-trip through PEM") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "gridforge-auth-test";
    fs::create_directories(dir);

    auth::KeyPair key = auth::generate_keypair(1024);
    auth::save_private_key(dir / "alice.priv", key.private_part);
    auth::save_public_key(dir / "alice.pub", key.public_part);

    auth::PrivateKey priv = auth::load_private_key(dir / "alice.priv");
    auth::PublicKey pub = auth::load_public_key(dir / "alice.pub");
    auto digest = auth::get_hash("roundtrip", auth::HashAlg::sha256);
    auto signature = auth::create_signature(digest, auth::HashAlg::sha256, priv);
    CHECK(auth::verify_signature(digest, auth::HashAlg::sha256, signature, pub));
    CHECK(pub.pem() == key.public_part.pem());

    // public part is derivable from the private part
    CHECK(priv.public_part().pem() == key.public_part.pem());

    fs::remove_all(dir);
}

TEST_CASE("base64 helpers round-trip") {
    std::mt19937 rng(37);
    for (int i = 0; i < 30; ++i) {
        std::vector<std::uint8_t> data(rng() % 100);
        for (auto& b : data) {
            b = static_cast<std::uint8_t>(rng());
        }
        CHECK(auth::base64_decode(auth::base64_encode(data)) == data);
    }
    CHECK_THROWS_AS(auth::base64_decode("abc"), auth::CryptoError);
}
