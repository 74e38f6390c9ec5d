#include "gzip_stream.hpp"

#include "bpprod/error.hpp"

#include <zlib.h>

namespace bpprod::detail {

GzipStreamBuf::GzipStreamBuf(const std::filesystem::path& path)
{
    gzFile f = gzopen(path.c_str(), "rb");
    if (f == nullptr) {
        fail(ErrorKind::Io, "cannot open " + path.string());
    }
    gzbuffer(f, 1 << 17);
    file_ = f;
}

GzipStreamBuf::~GzipStreamBuf()
{
    if (file_ != nullptr) {
        gzclose(static_cast<gzFile>(file_));
    }
}

GzipStreamBuf::int_type GzipStreamBuf::underflow()
{
    if (gptr() < egptr()) {
        return traits_type::to_int_type(*gptr());
    }
    const int n = gzread(static_cast<gzFile>(file_), buffer_.data(), static_cast<unsigned>(buffer_.size()));
    if (n < 0) {
        int errnum = 0;
        const char* msg = gzerror(static_cast<gzFile>(file_), &errnum);
        fail(ErrorKind::Io, std::string("gzip read failed: ") + (msg ? msg : "unknown"));
    }
    if (n == 0) {
        return traits_type::eof();
    }
    setg(buffer_.data(), buffer_.data(), buffer_.data() + n);
    return traits_type::to_int_type(*gptr());
}

}  // namespace bpprod::detail
