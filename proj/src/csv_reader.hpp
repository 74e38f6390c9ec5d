#pragma once

#include <istream>
#include <iterator>
#include <string>
#include <vector>

namespace bpprod::detail {

/// RFC 4180 record reader; accepts LF or CRLF line endings.
class CsvReader {
public:
    explicit CsvReader(std::istream& in) : it_(in), end_() {}

    /// False at end of input. Throws InvalidArgument on an unterminated quote.
    bool next(std::vector<std::string>& fields);

private:
    std::istreambuf_iterator<char> it_;
    std::istreambuf_iterator<char> end_;
};

}  // namespace bpprod::detail
