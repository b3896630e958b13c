#include "ddns/crypto/address.hpp"
#include "ddns/crypto/base58.hpp"
#include "ddns/crypto/hash.hpp"
#include "ddns/crypto/secp256k1.hpp"
#include "ddns/crypto/uint256.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/ecdsa.h>
#include <openssl/obj_mac.h>

#include <random>

using namespace ddns;
using namespace ddns::crypto;

namespace {

SecretKey secret_from_hex(const std::string& hex) {
    SecretKey sk;
    auto b = from_hex(hex);
    std::copy(b.begin(), b.end(), sk.bytes.begin());
    return sk;
}

std::array<std::uint8_t, 32> seed_of(std::uint8_t fill) {
    std::array<std::uint8_t, 32> s;
    s.fill(fill);
    return s;
}

// OpenSSL's EC_KEY interface is deprecated in 3.0 but remains the shortest
// way to run raw-digest ECDSA against an independent implementation.
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wdeprecated-declarations"
struct OpenSslKey {
    EC_KEY* key = nullptr;
    explicit OpenSslKey(const SecretKey& sk) {
        key = EC_KEY_new_by_curve_name(NID_secp256k1);
        BIGNUM* d = BN_bin2bn(sk.bytes.data(), 32, nullptr);
        EC_KEY_set_private_key(key, d);
        const EC_GROUP* g = EC_KEY_get0_group(key);
        EC_POINT* pub = EC_POINT_new(g);
        EC_POINT_mul(g, pub, d, nullptr, nullptr, nullptr);
        EC_KEY_set_public_key(key, pub);
        EC_POINT_free(pub);
        BN_free(d);
    }
    ~OpenSslKey() { EC_KEY_free(key); }

    std::array<std::uint8_t, 33> compressed() const {
        std::array<std::uint8_t, 33> out{};
        EC_POINT_point2oct(EC_KEY_get0_group(key), EC_KEY_get0_public_key(key), POINT_CONVERSION_COMPRESSED,
                           out.data(), out.size(), nullptr);
        return out;
    }

    bool verify(const Hash256& digest, const Signature& sig) const {
        ECDSA_SIG* s = ECDSA_SIG_new();
        ECDSA_SIG_set0(s, BN_bin2bn(sig.r.data(), 32, nullptr), BN_bin2bn(sig.s.data(), 32, nullptr));
        int rc = ECDSA_do_verify(digest.data.data(), 32, s, key);
        ECDSA_SIG_free(s);
        return rc == 1;
    }

    Signature sign_low_s(const Hash256& digest) const {
        ECDSA_SIG* s = ECDSA_do_sign(digest.data.data(), 32, key);
        const BIGNUM *r = nullptr, *sv = nullptr;
        ECDSA_SIG_get0(s, &r, &sv);
        BIGNUM* order = BN_new();
        EC_GROUP_get_order(EC_KEY_get0_group(key), order, nullptr);
        BIGNUM* half = BN_new();
        BN_rshift1(half, order);
        BIGNUM* s_low = BN_dup(sv);
        if (BN_cmp(s_low, half) > 0) BN_sub(s_low, order, s_low);
        Signature out;
        BN_bn2binpad(r, out.r.data(), 32);
        BN_bn2binpad(s_low, out.s.data(), 32);
        BN_free(order);
        BN_free(half);
        BN_free(s_low);
        ECDSA_SIG_free(s);
        return out;
    }
};
#pragma GCC diagnostic pop

}  // namespace

TEST(Hash, KnownDigests) {
    EXPECT_EQ(sha256({}).hex(), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(to_hex(ripemd160(as_bytes("abc"))), "8eb208f7e05d987a9b044a8e98c6b087f15a0bfc");
    EXPECT_EQ(double_sha256(as_bytes("hello")).hex(),
              "9595c9df90075148eb06860365df33584b75bff782a510c6cd4883a419833d50");
}

TEST(U256, Arithmetic) {
    auto a = U256::from_hex("ffffffffffffffffffffffffffffffff");
    std::uint64_t carry = 0;
    auto s = add(a, U256::from_u64(1), carry);
    EXPECT_EQ(s, shl(U256::from_u64(1), 128));
    EXPECT_EQ(shr(s, 128), U256::from_u64(1));
    EXPECT_EQ(mul_div(U256::from_u64(1000), 3, 2), U256::from_u64(1500));
    EXPECT_EQ(mul_div(U256::max(), 2, 1), U256::max());
    EXPECT_EQ(div_u64(U256::from_u64(1001), 10), U256::from_u64(100));
    EXPECT_EQ(s.bit_length(), 129u);
}

TEST(KeyPair, GeneratorForSecretOne) {
    SecretKey one = secret_from_hex("0000000000000000000000000000000000000000000000000000000000000001");
    EXPECT_EQ(to_hex(derive_public_key(one).bytes),
              "0279be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798");
}

TEST(KeyPair, SeededIsDeterministic) {
    auto seed = seed_of(0x01);
    auto a = generate_keypair(std::span<const std::uint8_t, 32>(seed));
    auto b = generate_keypair(std::span<const std::uint8_t, 32>(seed));
    EXPECT_EQ(a.secret_key, b.secret_key);
    EXPECT_EQ(a.public_key, b.public_key);
}

TEST(KeyPair, ZeroSeedRejected) {
    auto zero = seed_of(0x00);
    EXPECT_THROW(generate_keypair(std::span<const std::uint8_t, 32>(zero)), CryptoError);
    // The curve order itself reduces to zero as well.
    auto n = from_hex("fffffffffffffffffffffffffffffffebaaedce6af48a03bbfd25e8cd0364141");
    try {
        generate_keypair(std::span<const std::uint8_t, 32>(n.data(), 32));
        FAIL() << "expected invalid-seed";
    } catch (const CryptoError& e) {
        EXPECT_EQ(e.code(), CryptoError::Code::invalid_seed);
    }
}

TEST(KeyPair, UnseededDiffers) {
    auto a = generate_keypair();
    auto b = generate_keypair();
    EXPECT_NE(a.secret_key, b.secret_key);
}

TEST(Ecdsa, MatchesDeterministicNonceOracle) {
    auto doc = nlohmann::json::parse(fixture::read_fixture("ecdsa_vectors.json"));
    ASSERT_GE(doc["signatures"].size(), 30u);
    for (const auto& v : doc["signatures"]) {
        auto sk = secret_from_hex(v["secret"]);
        auto pk = derive_public_key(sk);
        EXPECT_EQ(to_hex(pk.bytes), v["public_key"].get<std::string>());
        auto msg = from_hex(v["message"].get<std::string>());
        auto sig = sign(sk, msg);
        EXPECT_EQ(to_hex(sig.r), v["r"].get<std::string>()) << v["message"];
        EXPECT_EQ(to_hex(sig.s), v["s"].get<std::string>()) << v["message"];
        EXPECT_TRUE(verify(pk, msg, sig));
    }
}

TEST(Ecdsa, CrossCheckAgainstOpenSsl) {
    std::mt19937_64 rng(20240611);
    int agree = 0;
    for (int i = 0; i < 1000; ++i) {
        std::array<std::uint8_t, 32> seed;
        for (auto& b : seed) b = static_cast<std::uint8_t>(rng());
        auto kp = generate_keypair(std::span<const std::uint8_t, 32>(seed));
        Bytes msg(static_cast<std::size_t>(rng() % 200));
        for (auto& b : msg) b = static_cast<std::uint8_t>(rng());
        auto digest = sha256(msg);

        OpenSslKey ref(kp.secret_key);
        ASSERT_EQ(ref.compressed(), kp.public_key.bytes);

        auto ours = sign(kp.secret_key, msg);
        auto theirs = ref.sign_low_s(digest);
        bool ok = ref.verify(digest, ours) && verify(kp.public_key, msg, theirs);
        // A tampered message must fail on both sides.
        Bytes bad = msg;
        bad.push_back(0x5a);
        auto bad_digest = sha256(bad);
        ok = ok && !ref.verify(bad_digest, ours) && !verify(kp.public_key, bad, ours);
        if (ok) ++agree;
    }
    EXPECT_EQ(agree, 1000);
}

TEST(Ecdsa, DeterministicAndCanonical) {
    auto seed = seed_of(0x07);
    auto kp = generate_keypair(std::span<const std::uint8_t, 32>(seed));
    auto msg = as_bytes("register DDNS/EXAMPLE");
    auto a = sign(kp.secret_key, msg);
    auto b = sign(kp.secret_key, msg);
    EXPECT_EQ(a, b);
    EXPECT_TRUE(a.is_canonical());
    auto wire = a.serialize();
    auto parsed = Signature::parse(wire);
    EXPECT_EQ(parsed.serialize(), wire);
}

TEST(Ecdsa, HighSRejected) {
    auto seed = seed_of(0x09);
    auto kp = generate_keypair(std::span<const std::uint8_t, 32>(seed));
    auto msg = as_bytes("malleability");
    auto sig = sign(kp.secret_key, msg);
    // s' = n - s verifies under textbook ECDSA but is not canonical.
    auto n = U256::from_hex("fffffffffffffffffffffffffffffffebaaedce6af48a03bbfd25e8cd0364141");
    std::uint64_t borrow = 0;
    auto high = sub(n, U256::from_be(std::span<const std::uint8_t, 32>(sig.s)), borrow);
    Signature flipped = sig;
    flipped.s = high.to_be();
    EXPECT_FALSE(flipped.is_canonical());
    EXPECT_FALSE(verify(kp.public_key, msg, flipped));
    EXPECT_THROW(Signature::parse(flipped.serialize()), CryptoError);
}

TEST(Ecdsa, WrongKeyAndBitFlips) {
    auto s1 = seed_of(0x11), s2 = seed_of(0x22);
    auto k1 = generate_keypair(std::span<const std::uint8_t, 32>(s1));
    auto k2 = generate_keypair(std::span<const std::uint8_t, 32>(s2));
    Bytes msg = to_bytes("the quick brown fox");
    auto sig = sign(k1.secret_key, msg);
    EXPECT_FALSE(verify(k2.public_key, msg, sig));
    int accepted = 0;
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10000; ++i) {
        Bytes m = msg;
        auto bit = rng() % (m.size() * 8);
        m[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
        if (i % 2) m.push_back(static_cast<std::uint8_t>(rng()));
        if (verify(k1.public_key, m, sig)) ++accepted;
    }
    EXPECT_EQ(accepted, 0);
}

TEST(Ecdsa, MalformedInputs) {
    auto seed = seed_of(0x03);
    auto kp = generate_keypair(std::span<const std::uint8_t, 32>(seed));
    auto msg = as_bytes("m");
    auto sig = sign(kp.secret_key, msg).serialize();
    // Bad signature bytes: false, not an exception.
    EXPECT_FALSE(verify(kp.public_key.view(), msg, ByteView(sig.data(), 63)));
    std::array<std::uint8_t, 64> zeros{};
    EXPECT_FALSE(verify(kp.public_key.view(), msg, zeros));
    // Bad key bytes: invalid-key.
    Bytes pk(kp.public_key.bytes.begin(), kp.public_key.bytes.end());
    pk[0] = 0x04;
    EXPECT_THROW(verify(pk, msg, sig), CryptoError);
    Bytes off_curve(33, 0x00);
    off_curve[0] = 0x02;
    off_curve[32] = 0x05;  // x = 5: x^3 + 7 = 132 is not a square mod p
    EXPECT_THROW(PublicKey::parse(off_curve), CryptoError);
}

TEST(Base58, MatchesOracle) {
    auto doc = nlohmann::json::parse(fixture::read_fixture("ecdsa_vectors.json"));
    for (const auto& v : doc["base58"]) {
        auto data = from_hex(v["hex"].get<std::string>());
        EXPECT_EQ(base58_encode(data), v["text"].get<std::string>());
        EXPECT_EQ(*base58_decode(v["text"].get<std::string>()), data);
    }
    for (const auto& v : doc["addresses"]) {
        Address a;
        auto p = from_hex(v["payload"].get<std::string>());
        std::copy(p.begin(), p.end(), a.payload.begin());
        EXPECT_EQ(a.encode(), v["text"].get<std::string>());
        EXPECT_EQ(Address::decode(v["text"].get<std::string>()), a);
    }
}

TEST(Address, StableAndChecksumProtected) {
    auto seed = seed_of(0x01);
    auto kp = generate_keypair(std::span<const std::uint8_t, 32>(seed));
    auto text = derive_address(kp.public_key).encode();
    EXPECT_EQ(text, derive_address(kp.public_key).encode());
    EXPECT_EQ(Address::decode(text), derive_address(kp.public_key));
    static const std::string alphabet = "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";
    for (std::size_t i = 0; i < text.size(); ++i) {
        for (char c : alphabet) {
            if (c == text[i]) continue;
            auto bad = text;
            bad[i] = c;
            ASSERT_FALSE(Address::decode(bad).has_value()) << bad;
        }
    }
}

TEST(Address, PolicyIsOrderIndependent) {
    std::array<PublicKey, 3> keys;
    for (int i = 0; i < 3; ++i) {
        auto s = seed_of(static_cast<std::uint8_t>(0x40 + i));
        keys[static_cast<std::size_t>(i)] = generate_keypair(std::span<const std::uint8_t, 32>(s)).public_key;
    }
    std::array<PublicKey, 3> shuffled{keys[2], keys[0], keys[1]};
    auto a = policy_address(keys);
    EXPECT_EQ(a, policy_address(shuffled));
    EXPECT_TRUE(a.is_policy());
    EXPECT_EQ(Address::decode(a.encode()), a);
}
