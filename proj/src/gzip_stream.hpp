#pragma once

#include <array>
#include <filesystem>
#include <istream>
#include <streambuf>

namespace bpprod::detail {

/// Read-only streambuf over a gzip file (zlib gzread).
class GzipStreamBuf : public std::streambuf {
public:
    explicit GzipStreamBuf(const std::filesystem::path& path);
    ~GzipStreamBuf() override;

    GzipStreamBuf(const GzipStreamBuf&) = delete;
    GzipStreamBuf& operator=(const GzipStreamBuf&) = delete;

protected:
    int_type underflow() override;

private:
    void* file_ = nullptr;
    std::array<char, 1 << 16> buffer_{};
};

class GzipIStream : public std::istream {
public:
    explicit GzipIStream(const std::filesystem::path& path) : std::istream(nullptr), buf_(path) { rdbuf(&buf_); }

private:
    GzipStreamBuf buf_;
};

}  // namespace bpprod::detail
