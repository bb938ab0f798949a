#include "gfpe/tabular.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <future>
#include <iterator>
#include <optional>
#include <sstream>
#include <thread>

#include "gfpe/dsl.hpp"

namespace gfpe {

std::vector<CsvRecord> read_csv(std::string_view data) {
   std::vector<CsvRecord> records;
   std::size_t i = 0;
   const std::size_t n = data.size();
   std::size_t line = 1;
   while(i < n) {
      CsvRecord rec;
      for(;;) {
         const std::size_t start = i;
         if(i < n && data[i] == '"') {
            ++i;
            for(;;) {
               if(i >= n)
                  throw Error(ErrorCode::ParseFailure, "unterminated quoted field at line " + std::to_string(line));
               if(data[i] == '"') {
                  if(i + 1 < n && data[i + 1] == '"') {
                     i += 2;
                     continue;
                  }
                  ++i;
                  break;
               }
               if(data[i] == '\n')
                  ++line;
               ++i;
            }
            if(i < n && data[i] != ',' && data[i] != '\n' && !(data[i] == '\r' && i + 1 < n && data[i + 1] == '\n'))
               throw Error(ErrorCode::ParseFailure, "text after closing quote at line " + std::to_string(line));
         } else {
            while(i < n && data[i] != ',' && data[i] != '\n' && !(data[i] == '\r' && i + 1 < n && data[i + 1] == '\n'))
               ++i;
         }
         rec.raw.emplace_back(data.substr(start, i - start));
         if(i < n && data[i] == ',') {
            ++i;
            continue;
         }
         break;
      }
      if(i < n && data[i] == '\n') {
         rec.terminator = "\n";
         ++i;
      } else if(i < n) {
         rec.terminator = "\r\n";
         i += 2;
      }
      ++line;
      records.push_back(std::move(rec));
   }
   return records;
}

std::string csv_value(std::string_view raw) {
   if(raw.size() < 2 || raw.front() != '"')
      return std::string(raw);
   std::string out;
   out.reserve(raw.size() - 2);
   for(std::size_t i = 1; i + 1 < raw.size(); ++i) {
      out.push_back(raw[i]);
      if(raw[i] == '"')
         ++i;
   }
   return out;
}

std::string csv_field(std::string_view value, bool force) {
   const bool needs = value.find_first_of(",\"\r\n") != std::string_view::npos;
   if(!needs && !force)
      return std::string(value);
   std::string out = "\"";
   for(char c : value) {
      if(c == '"')
         out.push_back('"');
      out.push_back(c);
   }
   out.push_back('"');
   return out;
}

std::vector<ColumnFormat> load_format_map(const std::string& path) {
   std::ifstream in(path);
   if(!in)
      throw Error(ErrorCode::Io, "cannot open format map " + path);
   const auto base = std::filesystem::path(path).parent_path();
   std::vector<ColumnFormat> out;
   std::string line;
   std::size_t number = 0;
   while(std::getline(in, line)) {
      ++number;
      if(!line.empty() && line.back() == '\r')
         line.pop_back();
      if(line.empty() || line.front() == '#')
         continue;
      const auto tab = line.find('\t');
      if(tab == std::string::npos || tab == 0 || tab + 1 == line.size())
         throw Error(ErrorCode::SyntaxError, path + ":" + std::to_string(number) + ": expected column<TAB>path");
      std::filesystem::path spec_path = line.substr(tab + 1);
      if(spec_path.is_relative())
         spec_path = base / spec_path;
      out.push_back({line.substr(0, tab), load_format(spec_path.string())});
   }
   return out;
}

CsvError::CsvError(ErrorCode code, std::size_t row, std::string column, const std::string& detail)
    : Error(code, "row=" + std::to_string(row) + " column=" + column + (detail.empty() ? "" : " " + detail)),
      row_(row),
      column_(std::move(column)) {}

namespace {

struct Job {
   std::size_t index;
   std::shared_ptr<const Cipher> cipher;
   std::vector<std::uint8_t> tweak;
   std::string name;
};

void transform_rows(std::vector<CsvRecord>& records, std::size_t first, std::size_t last,
                    const std::vector<Job>& jobs, Direction direction) {
   for(std::size_t r = first; r < last; ++r) {
      auto& rec = records[r];
      for(const auto& job : jobs) {
         auto& raw = rec.raw[job.index];
         const bool quoted = !raw.empty() && raw.front() == '"';
         const auto value = csv_value(raw);
         std::string result;
         try {
            result = direction == Direction::encrypt ? job.cipher->encrypt(value, job.tweak)
                                                     : job.cipher->decrypt(value, job.tweak);
         } catch(const Error& e) {
            throw CsvError(e.code(), r + 1, job.name, "");
         }
         raw = csv_field(result, quoted);
      }
   }
}

}  // namespace

std::string transform_csv(std::string_view input, const std::vector<ColumnFormat>& columns, const IntFpeKey& key,
                          const CsvOptions& options, Direction direction) {
   auto records = read_csv(input);
   if(records.empty())
      throw Error(ErrorCode::ParseFailure, "missing header row");
   const auto& header = records.front().raw;

   std::vector<Job> jobs;
   for(const auto& col : columns) {
      std::size_t idx = header.size();
      for(std::size_t i = 0; i < header.size(); ++i)
         if(csv_value(header[i]) == col.column)
            idx = i;
      if(idx == header.size())
         throw CsvError(ErrorCode::InvalidParameter, 1, col.column, "not in header");
      Job job{idx, std::make_shared<const Cipher>(col.format, key, options.cipher), {}, col.column};
      if(options.column_tweak)
         job.tweak.assign(col.column.begin(), col.column.end());
      jobs.push_back(std::move(job));
   }
   for(std::size_t r = 1; r < records.size(); ++r)
      if(records[r].raw.size() != header.size())
         throw CsvError(ErrorCode::ParseFailure, r + 1, "", "expected " + std::to_string(header.size()) + " fields");

   unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
   const std::size_t chunk = std::max<std::size_t>(1, options.chunk_rows);
   const std::size_t body = records.size() - 1;
   if(threads <= 1 || body <= chunk) {
      transform_rows(records, 1, records.size(), jobs, direction);
   } else {
      // Chunks are claimed in order; the first error by row wins.
      std::atomic<std::size_t> next{1};
      std::vector<std::future<void>> workers;
      for(unsigned t = 0; t < threads; ++t)
         workers.push_back(std::async(std::launch::async, [&] {
            for(;;) {
               const std::size_t first = next.fetch_add(chunk);
               if(first >= records.size())
                  return;
               transform_rows(records, first, std::min(records.size(), first + chunk), jobs, direction);
            }
         }));
      std::optional<CsvError> first_error;
      for(auto& w : workers) {
         try {
            w.get();
         } catch(const CsvError& e) {
            if(!first_error || e.row() < first_error->row())
               first_error = e;
         }
      }
      if(first_error)
         throw *first_error;
   }

   std::string out;
   out.reserve(input.size() + input.size() / 8);
   for(const auto& rec : records) {
      for(std::size_t i = 0; i < rec.raw.size(); ++i) {
         if(i)
            out.push_back(',');
         out += rec.raw[i];
      }
      out += rec.terminator;
   }
   return out;
}

void transform_csv(std::istream& in, std::ostream& out, const std::vector<ColumnFormat>& columns,
                   const IntFpeKey& key, const CsvOptions& options, Direction direction) {
   const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
   out << transform_csv(data, columns, key, options, direction);
}

std::vector<std::string> read_csv_column(std::string_view data, const std::string& column) {
   const auto records = read_csv(data);
   if(records.empty())
      throw Error(ErrorCode::ParseFailure, "missing header row");
   std::size_t idx = 0;
   if(!column.empty()) {
      const auto& header = records.front().raw;
      idx = header.size();
      for(std::size_t i = 0; i < header.size(); ++i)
         if(csv_value(header[i]) == column)
            idx = i;
      if(idx == header.size())
         throw CsvError(ErrorCode::InvalidParameter, 1, column, "not in header");
   }
   std::vector<std::string> out;
   out.reserve(records.size() - 1);
   for(std::size_t r = 1; r < records.size(); ++r) {
      if(idx >= records[r].raw.size())
         throw CsvError(ErrorCode::ParseFailure, r + 1, column, "missing field");
      out.push_back(csv_value(records[r].raw[idx]));
   }
   return out;
}

}  // namespace gfpe
