#include "ddns/crypto/secp256k1.hpp"

#include "ddns/crypto/hash.hpp"
#include "ddns/crypto/uint256.hpp"

#include <openssl/rand.h>

#include <cstring>

namespace ddns::crypto {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Modulus of the form 2^256 - c with c at most three limbs.
struct Modulus {
    U256 m;
    std::array<u64, 3> c;
    std::size_t c_limbs;
};

const Modulus kFieldP{
    U256::from_hex("FFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEFFFFFC2F"),
    {0x1000003D1ull, 0, 0},
    1};

const Modulus kOrderN{
    U256::from_hex("FFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141"),
    {0x402DA1732FC9BEBFull, 0x4551231950B75FC4ull, 0x1ull},
    3};

const U256 kHalfOrder = shr(kOrderN.m, 1);

const U256 kGx = U256::from_hex("79BE667EF9DCBBAC55A06295CE870B07029BFCDB2DCE28D959F2815B16F81798");
const U256 kGy = U256::from_hex("483ADA7726A3C4655DA4FBFC0E1108A8FD17B448A68554199C47D08FFB10D4B8");

U256 reduce(const std::array<u64, 8>& wide, const Modulus& mod) {
    std::array<u64, 12> v{};
    std::copy(wide.begin(), wide.end(), v.begin());
    for (;;) {
        bool high = false;
        for (std::size_t i = 4; i < v.size(); ++i) high |= v[i] != 0;
        if (!high) break;
        std::array<u64, 12> next{};
        for (std::size_t i = 0; i < 4; ++i) next[i] = v[i];
        for (std::size_t i = 4; i < v.size(); ++i) {
            if (v[i] == 0) continue;
            u128 carry = 0;
            std::size_t base = i - 4;
            for (std::size_t j = 0; j < mod.c_limbs; ++j) {
                u128 t = static_cast<u128>(v[i]) * mod.c[j] + next[base + j] + carry;
                next[base + j] = static_cast<u64>(t);
                carry = t >> 64;
            }
            for (std::size_t k = base + mod.c_limbs; carry != 0 && k < next.size(); ++k) {
                u128 t = static_cast<u128>(next[k]) + carry;
                next[k] = static_cast<u64>(t);
                carry = t >> 64;
            }
        }
        v = next;
    }
    U256 r{{v[0], v[1], v[2], v[3]}};
    while (r >= mod.m) {
        u64 borrow;
        r = sub(r, mod.m, borrow);
    }
    return r;
}

U256 mod_add(const U256& a, const U256& b, const Modulus& mod) {
    u64 carry;
    U256 r = add(a, b, carry);
    if (carry || r >= mod.m) {
        u64 borrow;
        r = sub(r, mod.m, borrow);
    }
    return r;
}

U256 mod_sub(const U256& a, const U256& b, const Modulus& mod) {
    u64 borrow;
    U256 r = sub(a, b, borrow);
    if (borrow) {
        u64 carry;
        r = add(r, mod.m, carry);
    }
    return r;
}

U256 mod_mul(const U256& a, const U256& b, const Modulus& mod) { return reduce(mul_wide(a, b), mod); }

U256 mod_pow(U256 base, const U256& exp, const Modulus& mod) {
    U256 result = U256::from_u64(1);
    for (int i = static_cast<int>(exp.bit_length()) - 1; i >= 0; --i) {
        result = mod_mul(result, result, mod);
        if (exp.bit(static_cast<unsigned>(i))) result = mod_mul(result, base, mod);
    }
    return result;
}

U256 mod_inv(const U256& a, const Modulus& mod) {
    u64 borrow;
    return mod_pow(a, sub(mod.m, U256::from_u64(2), borrow), mod);
}

U256 reduce_once(const U256& a, const Modulus& mod) {
    if (a < mod.m) return a;
    u64 borrow;
    return sub(a, mod.m, borrow);
}

// Field helpers.
U256 fadd(const U256& a, const U256& b) { return mod_add(a, b, kFieldP); }
U256 fsub(const U256& a, const U256& b) { return mod_sub(a, b, kFieldP); }
U256 fmul(const U256& a, const U256& b) { return mod_mul(a, b, kFieldP); }
U256 fsqr(const U256& a) { return mod_mul(a, a, kFieldP); }

struct Jacobian {
    U256 x, y, z;  // z == 0 is the point at infinity
    bool infinity() const { return z.is_zero(); }
};

struct Affine {
    U256 x, y;
};

Jacobian to_jacobian(const Affine& p) { return {p.x, p.y, U256::from_u64(1)}; }

Jacobian point_double(const Jacobian& p) {
    if (p.infinity() || p.y.is_zero()) return {};
    U256 a = fsqr(p.x);
    U256 b = fsqr(p.y);
    U256 c = fsqr(b);
    U256 d = fsub(fsub(fsqr(fadd(p.x, b)), a), c);
    d = fadd(d, d);
    U256 e = fadd(fadd(a, a), a);
    U256 f = fsqr(e);
    U256 x3 = fsub(f, fadd(d, d));
    U256 c8 = fadd(c, c);
    c8 = fadd(c8, c8);
    c8 = fadd(c8, c8);
    U256 y3 = fsub(fmul(e, fsub(d, x3)), c8);
    U256 z3 = fmul(p.y, p.z);
    z3 = fadd(z3, z3);
    return {x3, y3, z3};
}

Jacobian point_add(const Jacobian& p, const Jacobian& q) {
    if (p.infinity()) return q;
    if (q.infinity()) return p;
    U256 z1z1 = fsqr(p.z);
    U256 z2z2 = fsqr(q.z);
    U256 u1 = fmul(p.x, z2z2);
    U256 u2 = fmul(q.x, z1z1);
    U256 s1 = fmul(fmul(p.y, q.z), z2z2);
    U256 s2 = fmul(fmul(q.y, p.z), z1z1);
    U256 h = fsub(u2, u1);
    U256 r = fsub(s2, s1);
    if (h.is_zero()) {
        if (r.is_zero()) return point_double(p);
        return {};
    }
    U256 hh = fsqr(h);
    U256 hhh = fmul(h, hh);
    U256 v = fmul(u1, hh);
    U256 x3 = fsub(fsub(fsqr(r), hhh), fadd(v, v));
    U256 y3 = fsub(fmul(r, fsub(v, x3)), fmul(s1, hhh));
    U256 z3 = fmul(fmul(p.z, q.z), h);
    return {x3, y3, z3};
}

Affine to_affine(const Jacobian& p) {
    U256 zinv = mod_inv(p.z, kFieldP);
    U256 zinv2 = fsqr(zinv);
    return {fmul(p.x, zinv2), fmul(p.y, fmul(zinv2, zinv))};
}

const Affine kG{kGx, kGy};

// 4-bit fixed window over the generator; built once.
struct GeneratorTable {
    std::array<Jacobian, 16> entries;
    GeneratorTable() {
        entries[0] = {};
        entries[1] = to_jacobian(kG);
        for (std::size_t i = 2; i < 16; ++i) entries[i] = point_add(entries[i - 1], entries[1]);
    }
};

const GeneratorTable& generator_table() {
    static const GeneratorTable table;
    return table;
}

Jacobian window_mul(const std::array<Jacobian, 16>& table, const U256& k) {
    Jacobian acc{};
    for (int nibble = 63; nibble >= 0; --nibble) {
        for (int i = 0; i < 4; ++i) acc = point_double(acc);
        unsigned idx = static_cast<unsigned>((k.limb[static_cast<std::size_t>(nibble / 16)] >> ((nibble % 16) * 4)) & 0xf);
        if (idx != 0) acc = point_add(acc, table[idx]);
    }
    return acc;
}

Jacobian mul_generator(const U256& k) { return window_mul(generator_table().entries, k); }

Jacobian mul_point(const Affine& p, const U256& k) {
    std::array<Jacobian, 16> table;
    table[0] = {};
    table[1] = to_jacobian(p);
    for (std::size_t i = 2; i < 16; ++i) table[i] = point_add(table[i - 1], table[1]);
    return window_mul(table, k);
}

std::optional<Affine> decompress(const std::array<std::uint8_t, 33>& enc) {
    if (enc[0] != 0x02 && enc[0] != 0x03) return std::nullopt;
    U256 x = U256::from_be(std::span<const std::uint8_t, 32>(enc.data() + 1, 32));
    if (x >= kFieldP.m) return std::nullopt;
    U256 rhs = fadd(fmul(fsqr(x), x), U256::from_u64(7));
    // p = 3 mod 4, so a square root is rhs^((p+1)/4).
    u64 carry;
    U256 exp = shr(add(kFieldP.m, U256::from_u64(1), carry), 2);
    U256 y = mod_pow(rhs, exp, kFieldP);
    if (fsqr(y) != rhs) return std::nullopt;
    bool odd = y.limb[0] & 1u;
    if (odd != (enc[0] == 0x03)) y = fsub(U256{}, y);
    return Affine{x, y};
}

std::array<std::uint8_t, 33> compress(const Affine& p) {
    std::array<std::uint8_t, 33> out{};
    out[0] = (p.y.limb[0] & 1u) ? 0x03 : 0x02;
    auto xb = p.x.to_be();
    std::memcpy(out.data() + 1, xb.data(), 32);
    return out;
}

U256 to_scalar(const std::array<std::uint8_t, 32>& b) { return U256::from_be(std::span<const std::uint8_t, 32>(b)); }

bool valid_scalar(const U256& v) { return !v.is_zero() && v < kOrderN.m; }

Bytes concat(std::initializer_list<ByteView> parts) {
    Bytes out;
    for (auto p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

}  // namespace

PublicKey PublicKey::parse(ByteView encoded) {
    if (encoded.size() != 33) throw CryptoError(CryptoError::Code::invalid_key, "public key must be 33 bytes (compressed)");
    PublicKey pk;
    std::memcpy(pk.bytes.data(), encoded.data(), 33);
    if (!decompress(pk.bytes)) throw CryptoError(CryptoError::Code::invalid_key, "public key is not a point on secp256k1");
    return pk;
}

std::array<std::uint8_t, 64> Signature::serialize() const {
    std::array<std::uint8_t, 64> out{};
    std::memcpy(out.data(), r.data(), 32);
    std::memcpy(out.data() + 32, s.data(), 32);
    return out;
}

Signature Signature::from_bytes(std::span<const std::uint8_t, 64> bytes) {
    Signature sig;
    std::memcpy(sig.r.data(), bytes.data(), 32);
    std::memcpy(sig.s.data(), bytes.data() + 32, 32);
    return sig;
}

Signature Signature::parse(ByteView bytes) {
    if (bytes.size() != 64) throw CryptoError(CryptoError::Code::invalid_signature, "signature must be 64 bytes");
    auto sig = from_bytes(std::span<const std::uint8_t, 64>(bytes.data(), 64));
    if (!sig.is_canonical()) throw CryptoError(CryptoError::Code::invalid_signature, "signature is not canonical");
    return sig;
}

bool Signature::is_canonical() const {
    U256 rv = to_scalar(r), sv = to_scalar(s);
    return valid_scalar(rv) && valid_scalar(sv) && sv <= kHalfOrder;
}

PublicKey derive_public_key(const SecretKey& secret) {
    U256 d = to_scalar(secret.bytes);
    if (!valid_scalar(d)) throw CryptoError(CryptoError::Code::invalid_key, "secret key out of range");
    PublicKey pk;
    pk.bytes = compress(to_affine(mul_generator(d)));
    return pk;
}

KeyPair keypair_from_secret(const SecretKey& secret) { return {secret, derive_public_key(secret)}; }

KeyPair generate_keypair(std::optional<std::span<const std::uint8_t, 32>> seed) {
    if (seed) {
        U256 v = reduce_once(U256::from_be(*seed), kOrderN);
        if (v.is_zero()) throw CryptoError(CryptoError::Code::invalid_seed, "seed reduces to the zero scalar");
        SecretKey sk;
        sk.bytes = v.to_be();
        return keypair_from_secret(sk);
    }
    for (;;) {
        std::array<std::uint8_t, 32> buf{};
        if (RAND_bytes(buf.data(), 32) != 1) throw std::runtime_error("system RNG unavailable");
        U256 v = U256::from_be(std::span<const std::uint8_t, 32>(buf));
        if (!valid_scalar(v)) continue;
        SecretKey sk;
        sk.bytes = buf;
        return keypair_from_secret(sk);
    }
}

Signature sign_digest(const SecretKey& secret, const Hash256& digest) {
    U256 d = to_scalar(secret.bytes);
    if (!valid_scalar(d)) throw CryptoError(CryptoError::Code::invalid_key, "secret key out of range");
    U256 e = reduce_once(to_scalar(digest.data), kOrderN);
    auto h1 = e.to_be();

    std::array<std::uint8_t, 32> v, k;
    v.fill(0x01);
    k.fill(0x00);
    const std::uint8_t zero = 0x00, one = 0x01;
    k = hmac_sha256(k, concat({v, {&zero, 1}, secret.bytes, h1})).data;
    v = hmac_sha256(k, v).data;
    k = hmac_sha256(k, concat({v, {&one, 1}, secret.bytes, h1})).data;
    v = hmac_sha256(k, v).data;

    for (;;) {
        v = hmac_sha256(k, v).data;
        U256 nonce = to_scalar(v);
        if (valid_scalar(nonce)) {
            Affine rp = to_affine(mul_generator(nonce));
            U256 r = reduce_once(rp.x, kOrderN);
            if (!r.is_zero()) {
                U256 s = mod_mul(mod_inv(nonce, kOrderN), mod_add(e, mod_mul(r, d, kOrderN), kOrderN), kOrderN);
                if (!s.is_zero()) {
                    if (s > kHalfOrder) s = mod_sub(U256{}, s, kOrderN);
                    Signature sig;
                    sig.r = r.to_be();
                    sig.s = s.to_be();
                    return sig;
                }
            }
        }
        k = hmac_sha256(k, concat({v, {&zero, 1}})).data;
        v = hmac_sha256(k, v).data;
    }
}

Signature sign(const SecretKey& secret, ByteView message) { return sign_digest(secret, sha256(message)); }

bool verify_digest(const PublicKey& key, const Hash256& digest, const Signature& sig) {
    if (!sig.is_canonical()) return false;
    auto q = decompress(key.bytes);
    if (!q) throw CryptoError(CryptoError::Code::invalid_key, "public key is not a point on secp256k1");
    U256 r = to_scalar(sig.r), s = to_scalar(sig.s);
    U256 e = reduce_once(to_scalar(digest.data), kOrderN);
    U256 w = mod_inv(s, kOrderN);
    U256 u1 = mod_mul(e, w, kOrderN);
    U256 u2 = mod_mul(r, w, kOrderN);
    Jacobian sum = point_add(mul_generator(u1), mul_point(*q, u2));
    if (sum.infinity()) return false;
    return reduce_once(to_affine(sum).x, kOrderN) == r;
}

bool verify(const PublicKey& key, ByteView message, const Signature& sig) {
    return verify_digest(key, sha256(message), sig);
}

bool verify(ByteView public_key, ByteView message, ByteView signature) {
    auto pk = PublicKey::parse(public_key);
    if (signature.size() != Signature::size) return false;
    auto sig = Signature::from_bytes(std::span<const std::uint8_t, 64>(signature.data(), 64));
    return verify(pk, message, sig);
}

}  // namespace ddns::crypto
