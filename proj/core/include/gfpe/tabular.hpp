#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "gfpe/cipher.hpp"
#include "gfpe/format.hpp"

namespace gfpe {

// Comma-separated, double-quote escaping. Fields keep their raw bytes so
// untouched columns are written back exactly as read.
struct CsvRecord {
   std::vector<std::string> raw;
   std::string terminator;  // "\n", "\r\n" or "" for a final unterminated record
};

// Throws Error(ParseFailure) on a malformed quoted field.
std::vector<CsvRecord> read_csv(std::string_view data);
std::string csv_value(std::string_view raw);
// Quotes when the value needs it or when force is set.
std::string csv_field(std::string_view value, bool force = false);

struct ColumnFormat {
   std::string column;
   Format format;
};

// Lines "column<TAB>path"; relative paths resolve against the map's directory.
// Blank lines and lines starting with '#' are skipped.
std::vector<ColumnFormat> load_format_map(const std::string& path);

// A data error tied to one cell. row counts records from 1 (the header).
class CsvError : public Error {
public:
   CsvError(ErrorCode code, std::size_t row, std::string column, const std::string& detail);
   std::size_t row() const noexcept { return row_; }
   const std::string& column() const noexcept { return column_; }

private:
   std::size_t row_;
   std::string column_;
};

struct CsvOptions {
   CipherConfig cipher;
   bool column_tweak = false;  // bind each column's ciphertexts to its name
   unsigned threads = 0;       // 0: hardware concurrency
   std::size_t chunk_rows = 256;
};

enum class Direction { encrypt, decrypt };

// Enciphers the mapped columns of a CSV with a header row. Output rows keep
// input order. Throws CsvError for cells outside their format.
std::string transform_csv(std::string_view input, const std::vector<ColumnFormat>& columns, const IntFpeKey& key,
                          const CsvOptions& options, Direction direction);

void transform_csv(std::istream& in, std::ostream& out, const std::vector<ColumnFormat>& columns,
                   const IntFpeKey& key, const CsvOptions& options, Direction direction);

// Decoded values of one column (the first if column is empty), header skipped.
std::vector<std::string> read_csv_column(std::string_view data, const std::string& column = {});

}  // namespace gfpe
