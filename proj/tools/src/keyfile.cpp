#include "ddns_cli/keyfile.hpp"

#include "ddns/crypto/hash.hpp"
#include "ddns_cli/errors.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>

namespace ddns::cli {

namespace {
constexpr char kMagic[8] = {'D', 'D', 'N', 'S', 'K', 'E', 'Y', '1'};
constexpr std::size_t kBody = 8 + 32 + 33;
}  // namespace

Bytes encode_key_file(const crypto::KeyPair& key) {
    Bytes out(kMagic, kMagic + 8);
    out.insert(out.end(), key.secret_key.bytes.begin(), key.secret_key.bytes.end());
    out.insert(out.end(), key.public_key.bytes.begin(), key.public_key.bytes.end());
    auto check = crypto::double_sha256(out);
    out.insert(out.end(), check.data.begin(), check.data.begin() + 4);
    return out;
}

crypto::KeyPair decode_key_file(ByteView bytes) {
    if (bytes.size() != kKeyFileSize) throw CliError(kInvalidInput, "key file: wrong size");
    if (std::memcmp(bytes.data(), kMagic, 8) != 0) throw CliError(kInvalidInput, "key file: bad magic");
    auto check = crypto::double_sha256(bytes.first(kBody));
    if (!std::equal(check.data.begin(), check.data.begin() + 4, bytes.begin() + kBody))
        throw CliError(kInvalidInput, "key file: checksum mismatch");
    crypto::SecretKey sk;
    std::copy_n(bytes.begin() + 8, 32, sk.bytes.begin());
    crypto::KeyPair kp;
    try {
        kp = crypto::keypair_from_secret(sk);
    } catch (const crypto::CryptoError&) {
        throw CliError(kInvalidInput, "key file: secret out of range");
    }
    if (!std::equal(kp.public_key.bytes.begin(), kp.public_key.bytes.end(), bytes.begin() + 40))
        throw CliError(kInvalidInput, "key file: public key does not match secret");
    return kp;
}

void write_key_file(const std::filesystem::path& path, const crypto::KeyPair& key, bool force) {
    int flags = O_WRONLY | O_CREAT | (force ? O_TRUNC : O_EXCL);
    int fd = ::open(path.c_str(), flags, 0600);
    if (fd < 0) {
        if (errno == EEXIST) throw CliError(kInvalidInput, path.string() + " exists (use --force)");
        throw CliError(kInvalidInput, "cannot create " + path.string() + ": " + std::strerror(errno));
    }
    auto bytes = encode_key_file(key);
    bool ok = ::write(fd, bytes.data(), bytes.size()) == static_cast<ssize_t>(bytes.size());
    ok = ::fsync(fd) == 0 && ok;
    ::close(fd);
    if (!ok) throw CliError(kInternal, "short write to " + path.string());
}

crypto::KeyPair read_key_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError(kInvalidInput, "cannot read key file " + path.string());
    Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return decode_key_file(bytes);
    } catch (const CliError& e) {
        throw CliError(e.code(), path.string() + ": " + e.what());
    }
}

}  // namespace ddns::cli
