#include "gfpe/charset.hpp"

#include <algorithm>

#include "gfpe/error.hpp"
#include "gfpe/utf8.hpp"

namespace gfpe {

namespace {

std::vector<CharSet::Interval> normalize(std::vector<CharSet::Interval> in) {
   std::sort(in.begin(), in.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
   std::vector<CharSet::Interval> out;
   for(const auto& iv : in) {
      if(!out.empty() && iv.lo <= out.back().hi + 1) {
         out.back().hi = std::max(out.back().hi, iv.hi);
      } else {
         out.push_back(iv);
      }
   }
   return out;
}

}  // namespace

CharSet::CharSet(std::vector<Interval> normalized) : intervals_(std::move(normalized)) {
   starts_.reserve(intervals_.size());
   for(const auto& iv : intervals_) {
      starts_.push_back(size_);
      size_ += static_cast<std::size_t>(iv.hi - iv.lo) + 1;
   }
}

CharSet CharSet::of(std::u32string_view chars) {
   std::vector<Interval> ivs;
   ivs.reserve(chars.size());
   for(char32_t c : chars) {
      ivs.push_back({c, c});
   }
   return CharSet(normalize(std::move(ivs)));
}

CharSet CharSet::range(char32_t lo, char32_t hi) {
   if(lo > hi) {
      throw Error(ErrorCode::BadParameter, "reversed character range");
   }
   return CharSet({{lo, hi}});
}

CharSet CharSet::from_intervals(std::vector<Interval> intervals) {
   for(const auto& iv : intervals) {
      if(iv.lo > iv.hi) {
         throw Error(ErrorCode::BadParameter, "reversed character range");
      }
   }
   return CharSet(normalize(std::move(intervals)));
}

CharSet CharSet::parse(std::string_view text) {
   std::u32string chars;
   try {
      chars = utf8::decode(text);
   } catch(const Error& e) {
      throw Error(ErrorCode::BadParameter, e.what());
   }
   std::vector<char32_t> atoms;
   std::vector<bool> escaped;
   for(std::size_t i = 0; i < chars.size(); ++i) {
      if(chars[i] == U'\\') {
         if(i + 1 == chars.size()) {
            throw Error(ErrorCode::BadParameter, "dangling escape in charset '" + std::string(text) + "'");
         }
         atoms.push_back(chars[++i]);
         escaped.push_back(true);
      } else {
         atoms.push_back(chars[i]);
         escaped.push_back(false);
      }
   }
   std::vector<Interval> ivs;
   for(std::size_t i = 0; i < atoms.size(); ++i) {
      if(i + 2 < atoms.size() && atoms[i + 1] == U'-' && !escaped[i + 1]) {
         if(atoms[i] > atoms[i + 2]) {
            throw Error(ErrorCode::BadParameter, "reversed range in charset '" + std::string(text) + "'");
         }
         ivs.push_back({atoms[i], atoms[i + 2]});
         i += 2;
      } else {
         ivs.push_back({atoms[i], atoms[i]});
      }
   }
   return CharSet(normalize(std::move(ivs)));
}

std::optional<std::size_t> CharSet::index_of(char32_t c) const noexcept {
   auto it = std::upper_bound(intervals_.begin(), intervals_.end(), c,
                              [](char32_t v, const Interval& iv) { return v < iv.lo; });
   if(it == intervals_.begin()) {
      return std::nullopt;
   }
   --it;
   if(c > it->hi) {
      return std::nullopt;
   }
   const auto k = static_cast<std::size_t>(it - intervals_.begin());
   return starts_[k] + static_cast<std::size_t>(c - it->lo);
}

char32_t CharSet::at(std::size_t index) const {
   if(index >= size_) {
      throw Error(ErrorCode::RankOutOfRange, "charset index out of range");
   }
   auto it = std::upper_bound(starts_.begin(), starts_.end(), index);
   const auto k = static_cast<std::size_t>(it - starts_.begin()) - 1;
   return intervals_[k].lo + static_cast<char32_t>(index - starts_[k]);
}

CharSet CharSet::united(const CharSet& other) const {
   auto ivs = intervals_;
   ivs.insert(ivs.end(), other.intervals_.begin(), other.intervals_.end());
   return CharSet(normalize(std::move(ivs)));
}

bool CharSet::disjoint(const CharSet& other) const noexcept {
   std::size_t i = 0;
   std::size_t j = 0;
   while(i < intervals_.size() && j < other.intervals_.size()) {
      const auto& a = intervals_[i];
      const auto& b = other.intervals_[j];
      if(a.hi < b.lo) {
         ++i;
      } else if(b.hi < a.lo) {
         ++j;
      } else {
         return false;
      }
   }
   return true;
}

std::string CharSet::to_string() const {
   auto put = [](std::string& out, char32_t c) {
      if(c == U'-' || c == U'\\') {
         out.push_back('\\');
      }
      out += utf8::encode(c);
   };
   std::string out;
   for(const auto& iv : intervals_) {
      const auto span = iv.hi - iv.lo;
      if(span >= 2) {
         put(out, iv.lo);
         out.push_back('-');
         put(out, iv.hi);
      } else {
         for(char32_t c = iv.lo; c <= iv.hi; ++c) {
            put(out, c);
         }
      }
   }
   return out;
}

}  // namespace gfpe
