#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "septimal/relations.hpp"

namespace {

constexpr const char *kPinnedSha256 = "5a25c074f40ebb9b6ec9f1ce692dc0490db803bc189b7fcd483ff1e406a5d523";

std::string sha256_hex(const std::string &data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i)
        out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return out.str();
}

} // namespace

TEST_CASE("relation file checksum is pinned")
{
    std::ifstream in(septimal::default_relations_path(), std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    CHECK(sha256_hex(ss.str()) == kPinnedSha256);
}

TEST_CASE("sha256 helper")
{
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
