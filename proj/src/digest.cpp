#include "skyshare/digest.hpp"

#include <openssl/evp.h>

#include <array>
#include <bit>
#include <cstring>
#include <stdexcept>

namespace skyshare {

struct Sha256::Impl {
    EVP_MD_CTX* ctx = nullptr;
    ~Impl()
    {
        if (ctx)
            EVP_MD_CTX_free(ctx);
    }
};

Sha256::Sha256() : impl_(std::make_unique<Impl>())
{
    impl_->ctx = EVP_MD_CTX_new();
    if (!impl_->ctx || EVP_DigestInit_ex(impl_->ctx, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256: EVP initialisation failed");
}

Sha256::~Sha256() = default;
Sha256::Sha256(Sha256&&) noexcept = default;
Sha256& Sha256::operator=(Sha256&&) noexcept = default;

void Sha256::update(std::span<const std::byte> bytes)
{
    if (!bytes.empty())
        EVP_DigestUpdate(impl_->ctx, bytes.data(), bytes.size());
}

void Sha256::update(std::string_view text)
{
    update(std::as_bytes(std::span(text.data(), text.size())));
}

// Numeric values are hashed in little-endian byte order regardless of host.
void Sha256::update(std::uint64_t value)
{
    std::array<std::byte, 8> buf{};
    for (int i = 0; i < 8; ++i)
        buf[i] = static_cast<std::byte>((value >> (8 * i)) & 0xffU);
    update(std::span<const std::byte>(buf));
}

void Sha256::update(double value) { update(std::bit_cast<std::uint64_t>(value)); }

std::string Sha256::finish_raw()
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> out{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(impl_->ctx, out.data(), &len);
    return std::string(reinterpret_cast<const char*>(out.data()), len);
}

std::string Sha256::finish_hex() { return to_hex(finish_raw()); }

std::string sha256_hex(std::string_view text)
{
    Sha256 h;
    h.update(text);
    return h.finish_hex();
}

std::string to_hex(std::string_view raw)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(raw.size() * 2);
    for (unsigned char c : raw) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

}  // namespace skyshare
