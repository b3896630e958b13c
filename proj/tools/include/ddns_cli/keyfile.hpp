#pragma once

#include "ddns/crypto/secp256k1.hpp"

#include <filesystem>

namespace ddns::cli {

// 77 bytes: "DDNSKEY1", secret key (32), compressed public key (33), then
// the first 4 bytes of double SHA-256 over the preceding 73 bytes.
inline constexpr std::size_t kKeyFileSize = 77;

Bytes encode_key_file(const crypto::KeyPair& key);
/// Throws CliError{kInvalidInput} on bad magic, size, checksum, or a
/// public key that does not match the secret.
crypto::KeyPair decode_key_file(ByteView bytes);

/// Creates the file with mode 0600; refuses to overwrite unless `force`.
void write_key_file(const std::filesystem::path& path, const crypto::KeyPair& key, bool force);
crypto::KeyPair read_key_file(const std::filesystem::path& path);

}  // namespace ddns::cli
