#include "gfpe/split.hpp"

#include <algorithm>

#include "detail/format_node.hpp"
#include "gfpe/rank.hpp"
#include "gfpe/utf8.hpp"

namespace gfpe {

MaxSize parse_max_size(std::string_view text) {
   if(text.empty() || text == "inf" || text == "infinity") {
      return std::nullopt;
   }
   BigInt v = parse_size_literal(text);
   if(v < 2) {
      throw Error(ErrorCode::InvalidParameter, "maxS must be at least 2");
   }
   return v;
}

std::string to_string(const MaxSize& max) {
   return max ? to_string(*max) : std::string("inf");
}

std::string_view to_string(PlanKind kind) {
   switch(kind) {
      case PlanKind::whole: return "whole";
      case PlanKind::union_groups: return "union_groups";
      case PlanKind::concat_groups: return "concat_groups";
      case PlanKind::length_groups: return "length_groups";
      case PlanKind::repeat: return "repeat";
      case PlanKind::char_blocks: return "char_blocks";
      case PlanKind::fixed_blocks: return "fixed_blocks";
      case PlanKind::ssn_blocks: return "ssn_blocks";
      case PlanKind::ccn_blocks: return "ccn_blocks";
      case PlanKind::interval_blocks: return "interval_blocks";
   }
   return "unknown";
}

namespace {

using detail::FormatNode;
using NodePtr = std::shared_ptr<const PlanNode>;

struct Run {
   std::size_t first;
   std::size_t last;
   BigInt aggregate;
   bool single_oversized;
};

// Extends the current run while its sum (or product) stays within max; an
// element above max always stands alone.
std::vector<Run> greedy(const std::vector<BigInt>& sizes, const BigInt& max, bool product) {
   std::vector<Run> runs;
   bool open = false;
   for(std::size_t i = 0; i < sizes.size(); ++i) {
      if(sizes[i] > max) {
         open = false;
         runs.push_back({i, i, sizes[i], true});
         continue;
      }
      if(open) {
         BigInt combined = runs.back().aggregate;
         if(product) {
            combined *= sizes[i];
         } else {
            combined += sizes[i];
         }
         if(combined <= max) {
            runs.back().last = i;
            runs.back().aggregate = std::move(combined);
            continue;
         }
      }
      runs.push_back({i, i, sizes[i], false});
      open = true;
   }
   return runs;
}

const std::vector<BigInt> ssn_component_sizes = {BigInt(898), BigInt(99), BigInt(9999)};

class Planner {
public:
   explicit Planner(BigInt max) : max_(std::move(max)) {}

   NodePtr plan(const Format& f) {
      if(f.size() <= max_) {
         auto node = make(PlanKind::whole, f);
         node->groups.push_back(leaf(0, 0, f.size()));
         return node;
      }
      const auto& n = f.node();
      switch(f.kind()) {
         case NodeKind::union_of:
         case NodeKind::concat: {
            std::vector<BigInt> sizes;
            for(const auto& c : n.children) {
               sizes.push_back(c.size());
            }
            const bool product = f.kind() == NodeKind::concat;
            auto node = make(product ? PlanKind::concat_groups : PlanKind::union_groups, f);
            for(const auto& run : greedy(sizes, max_, product)) {
               if(run.single_oversized) {
                  node->groups.push_back(inner(run, plan(n.children[run.first])));
               } else {
                  node->groups.push_back(leaf(run.first, run.last, run.aggregate));
               }
            }
            return node;
         }
         case NodeKind::range:
         case NodeKind::var_string:
         case NodeKind::delim_var_string: {
            const std::size_t min = count_min(f);
            std::vector<BigInt> sizes;
            for(std::size_t i = 0; i + 1 < n.cumulative.size(); ++i) {
               sizes.push_back(n.cumulative[i + 1] - n.cumulative[i]);
            }
            auto node = make(PlanKind::length_groups, f);
            for(auto run : greedy(sizes, max_, false)) {
               run.first += min;
               run.last += min;
               if(run.single_oversized) {
                  auto sub = f.kind() == NodeKind::range ? repeat(f, run.first) : char_blocks(f, run.first);
                  node->groups.push_back(inner(run, std::move(sub)));
               } else {
                  node->groups.push_back(leaf(run.first, run.last, run.aggregate));
               }
            }
            return node;
         }
         case NodeKind::fixed_string: {
            std::vector<BigInt> sizes;
            for(const auto& set : n.as<spec::FixedString>().charsets) {
               sizes.emplace_back(static_cast<unsigned long>(set.size()));
            }
            return blocks(PlanKind::fixed_blocks, f, sizes, 0);
         }
         case NodeKind::ssn: return blocks(PlanKind::ssn_blocks, f, ssn_component_sizes, 0);
         case NodeKind::ccn: return blocks(PlanKind::ccn_blocks, f, std::vector<BigInt>(15, BigInt(10)), 0);
         case NodeKind::integral:
         case NodeKind::date: {
            auto node = make(PlanKind::interval_blocks, f);
            node->groups.push_back(leaf(0, 0, max_));
            return node;
         }
         case NodeKind::string_set:
         case NodeKind::delim_string_set:
            throw Error(ErrorCode::UnsplittableAtom,
                        "string set of " + to_string(f.size()) + " members exceeds maxS " + to_string(max_));
      }
      throw Error(ErrorCode::UnsplittableAtom, "unsupported node");
   }

private:
   static std::size_t count_min(const Format& f) {
      const auto& n = f.node();
      switch(f.kind()) {
         case NodeKind::range: return n.as<spec::Range>().min;
         case NodeKind::var_string: return n.as<spec::VarString>().min;
         default: return n.as<spec::DelimVarString>().min;
      }
   }

   std::shared_ptr<PlanNode> make(PlanKind kind, const Format& f) {
      auto node = std::make_shared<PlanNode>(PlanNode{kind, f, next_++, 0, {}});
      return node;
   }

   PlanGroup leaf(std::size_t first, std::size_t last, const BigInt& size) {
      PlanGroup g;
      g.first = first;
      g.last = last;
      g.size = size;
      g.oversized = size > max_;
      g.slot = next_++;
      return g;
   }

   PlanGroup inner(const Run& run, NodePtr sub) {
      PlanGroup g;
      g.first = run.first;
      g.last = run.last;
      g.size = run.aggregate;
      g.sub = std::move(sub);
      g.slot = next_++;
      return g;
   }

   NodePtr blocks(PlanKind kind, const Format& f, const std::vector<BigInt>& sizes, std::size_t count) {
      auto node = make(kind, f);
      node->count = count;
      for(const auto& run : greedy(sizes, max_, true)) {
         node->groups.push_back(leaf(run.first, run.last, run.aggregate));
      }
      return node;
   }

   NodePtr repeat(const Format& f, std::size_t k) {
      const auto& inner_format = f.node().children.front();
      auto node = make(PlanKind::repeat, f);
      node->count = k;
      for(const auto& run : greedy(std::vector<BigInt>(k, inner_format.size()), max_, true)) {
         if(run.single_oversized) {
            node->groups.push_back(inner(run, plan(inner_format)));
         } else {
            node->groups.push_back(leaf(run.first, run.last, run.aggregate));
         }
      }
      return node;
   }

   NodePtr char_blocks(const Format& f, std::size_t length) {
      const auto& alphabet = f.kind() == NodeKind::var_string ? f.node().as<spec::VarString>().alphabet
                                                              : f.node().as<spec::DelimVarString>().alphabet;
      return blocks(PlanKind::char_blocks, f,
                    std::vector<BigInt>(length, BigInt(static_cast<unsigned long>(alphabet.size()))), length);
   }

   BigInt max_;
   std::uint64_t next_ = 0;
};

const PlanGroup& group_of(const PlanNode& p, std::size_t i, std::size_t& index) {
   for(std::size_t g = 0; g < p.groups.size(); ++g) {
      if(p.groups[g].first <= i && i <= p.groups[g].last) {
         index = g;
         return p.groups[g];
      }
   }
   throw Error(ErrorCode::VectorShapeMismatch, "no plan group covers element " + std::to_string(i));
}

std::size_t count_of(const Format& f, std::u32string_view text) {
   switch(f.kind()) {
      case NodeKind::range: return detail::cut(f.node(), text)->repetitions;
      case NodeKind::var_string: return text.size();
      default: return text.size() - 1;
   }
}

std::u32string_view body_of(const Format& f, std::u32string_view text) {
   return f.kind() == NodeKind::delim_var_string ? text.substr(0, text.size() - 1) : text;
}

const CharSet& alphabet_of(const Format& f) {
   return f.kind() == NodeKind::var_string ? f.node().as<spec::VarString>().alphabet
                                           : f.node().as<spec::DelimVarString>().alphabet;
}

// Ranks of SSN components: area among valid areas, group - 1, serial - 1.
std::vector<BigInt> ssn_components(std::u32string_view text) {
   const auto n = *detail::parse_digits(text);
   const auto area = n / 1000000;
   const auto group = n / 10000 % 100;
   const auto serial = n % 10000;
   const auto area_rank = area - 1 - (area > 666 ? 1 : 0);
   return {BigInt(static_cast<unsigned long>(area_rank)), BigInt(static_cast<unsigned long>(group - 1)),
           BigInt(static_cast<unsigned long>(serial - 1))};
}

std::u32string ssn_from_components(const std::vector<BigInt>& c) {
   const auto area_rank = c[0].get_ui();
   const auto area = area_rank < 665 ? area_rank + 1 : area_rank + 2;
   const auto n = area * 1000000 + (c[1].get_ui() + 1) * 10000 + (c[2].get_ui() + 1);
   return detail::digits_text(n, 9);
}

// Per-element ranks of a *_blocks / char node, and their radices.
void element_ranks(const PlanNode& p, std::u32string_view text, std::vector<BigInt>& ranks,
                   std::vector<BigInt>& radices) {
   const auto& f = p.format;
   switch(p.kind) {
      case PlanKind::char_blocks: {
         const auto& alphabet = alphabet_of(f);
         for(char32_t c : body_of(f, text)) {
            ranks.emplace_back(static_cast<unsigned long>(*alphabet.index_of(c)));
            radices.emplace_back(static_cast<unsigned long>(alphabet.size()));
         }
         return;
      }
      case PlanKind::fixed_blocks: {
         const auto& sets = f.node().as<spec::FixedString>().charsets;
         for(std::size_t i = 0; i < sets.size(); ++i) {
            ranks.emplace_back(static_cast<unsigned long>(*sets[i].index_of(text[i])));
            radices.emplace_back(static_cast<unsigned long>(sets[i].size()));
         }
         return;
      }
      case PlanKind::ssn_blocks:
         ranks = ssn_components(text);
         radices = ssn_component_sizes;
         return;
      case PlanKind::ccn_blocks:
         for(std::size_t i = 0; i < 15; ++i) {
            ranks.emplace_back(static_cast<unsigned long>(text[i] - U'0'));
            radices.emplace_back(10);
         }
         return;
      default: return;
   }
}

BigInt sas(const std::vector<BigInt>& ranks, const std::vector<BigInt>& radices, std::size_t first,
           std::size_t last) {
   BigInt r = 0;
   BigInt weight = 1;
   for(std::size_t i = first; i <= last; ++i) {
      r += weight * ranks[i];
      weight *= radices[i];
   }
   return r;
}

void unsas(BigInt r, const std::vector<BigInt>& radices, std::size_t first, std::size_t last,
           std::vector<BigInt>& out) {
   BigInt digit;
   for(std::size_t i = first; i <= last; ++i) {
      mpz_fdiv_qr(r.get_mpz_t(), digit.get_mpz_t(), r.get_mpz_t(), radices[i].get_mpz_t());
      out[i] = digit;
   }
}

BigInt interval_width(const PlanNode& p, const BigInt& block) {
   const BigInt& w = p.groups.front().size;
   const BigInt rest = p.format.size() - block * w;
   return rest < w ? rest : w;
}

BigInt block_width(const BigInt& total, const BigInt& w, const BigInt& block) {
   const BigInt rest = total - block * w;
   return rest < w ? rest : w;
}

class Ranker {
public:
   Ranker(RankVector* out, std::string* path, const MaxSize& max) : out_(out), path_(path), max_(max) {}

   void walk(const PlanNode& p, std::u32string_view text) {
      const auto& f = p.format;
      const auto& n = f.node();
      switch(p.kind) {
         case PlanKind::whole: push(detail::rank32(n, text), p.groups.front(), 0); return;
         case PlanKind::union_groups: {
            const auto c = *detail::cut(n, text);
            std::size_t gi = 0;
            const auto& g = group_of(p, c.index.front(), gi);
            note(p, 'u', BigInt(static_cast<unsigned long>(gi)));
            if(g.sub) {
               walk(*g.sub, c.pieces.front());
            } else {
               push(detail::rank32(n, text) - n.weights[g.first], g, 0);
            }
            return;
         }
         case PlanKind::concat_groups:
         case PlanKind::repeat: {
            const auto c = *detail::cut(n, text);
            for(const auto& g : p.groups) {
               if(g.sub) {
                  walk(*g.sub, c.pieces[g.first]);
                  continue;
               }
               BigInt r = 0;
               BigInt weight = 1;
               for(std::size_t j = g.first; j <= g.last; ++j) {
                  const auto& child = n.children[p.kind == PlanKind::repeat ? 0 : j];
                  r += weight * detail::rank32(child.node(), c.pieces[j]);
                  weight *= child.size();
               }
               push(r, g, 0);
            }
            return;
         }
         case PlanKind::length_groups: {
            const auto k = count_of(f, text);
            std::size_t gi = 0;
            const auto& g = group_of(p, k, gi);
            note(p, 'k', BigInt(static_cast<unsigned long>(gi)));
            if(g.sub) {
               walk(*g.sub, text);
            } else {
               // groups.front().first is the smallest count, cumulative's origin.
               push(detail::rank32(n, text) - n.cumulative[g.first - p.groups.front().first], g, 0);
            }
            return;
         }
         case PlanKind::char_blocks:
         case PlanKind::fixed_blocks:
         case PlanKind::ssn_blocks:
         case PlanKind::ccn_blocks: {
            std::vector<BigInt> ranks;
            std::vector<BigInt> radices;
            element_ranks(p, text, ranks, radices);
            for(const auto& g : p.groups) {
               BigInt r = sas(ranks, radices, g.first, g.last);
               if(!g.oversized) {
                  push(std::move(r), g, 0);
                  continue;
               }
               const BigInt& w = *max_;
               BigInt block = r / w;
               note(p, 'b', block);
               out_->ranks.push_back(r - block * w);
               out_->sizes.push_back(block_width(g.size, w, block));
               out_->slots.push_back({g.slot, std::move(block)});
            }
            return;
         }
         case PlanKind::interval_blocks: {
            const BigInt full = detail::rank32(n, text);
            const BigInt& w = p.groups.front().size;
            BigInt block = full / w;
            note(p, 'b', block);
            BigInt r = full - block * w;
            out_->ranks.push_back(std::move(r));
            out_->sizes.push_back(interval_width(p, block));
            out_->slots.push_back({p.groups.front().slot, std::move(block)});
            return;
         }
      }
   }

private:
   void push(BigInt r, const PlanGroup& g, unsigned long block) {
      out_->ranks.push_back(std::move(r));
      out_->sizes.push_back(g.size);
      out_->slots.push_back({g.slot, BigInt(block)});
   }

   void note(const PlanNode& p, char tag, const BigInt& choice) {
      if(path_) {
         *path_ += tag;
         *path_ += std::to_string(p.id);
         *path_ += '=';
         *path_ += to_string(choice);
         *path_ += ';';
      }
   }

   RankVector* out_;
   std::string* path_;
   const MaxSize& max_;
};

class Unranker {
public:
   Unranker(const RankVector& v, const MaxSize& max) : v_(v), max_(max) {
      if(v.ranks.size() != v.sizes.size() || (!v.slots.empty() && v.slots.size() != v.ranks.size())) {
         throw Error(ErrorCode::VectorShapeMismatch, "ranks, sizes and slots differ in length");
      }
   }

   std::u32string walk(const PlanNode& p, std::u32string_view f) {
      const auto& fmt = p.format;
      const auto& n = fmt.node();
      switch(p.kind) {
         case PlanKind::whole: return detail::unrank32(n, take(p.groups.front().size));
         case PlanKind::union_groups: {
            const auto c = *detail::cut(n, f);
            std::size_t gi = 0;
            const auto& g = group_of(p, c.index.front(), gi);
            if(g.sub) {
               return walk(*g.sub, c.pieces.front());
            }
            return detail::unrank32(n, n.weights[g.first] + take(g.size));
         }
         case PlanKind::concat_groups:
         case PlanKind::repeat: {
            const auto c = *detail::cut(n, f);
            const bool rep = p.kind == PlanKind::repeat;
            const std::size_t parts = rep ? p.count : n.children.size();
            std::vector<std::u32string> texts(parts);
            std::vector<BigInt> radices;
            for(std::size_t j = 0; j < parts; ++j) {
               radices.push_back(n.children[rep ? 0 : j].size());
            }
            std::vector<BigInt> digits(parts);
            for(const auto& g : p.groups) {
               if(g.sub) {
                  texts[g.first] = walk(*g.sub, c.pieces[g.first]);
                  continue;
               }
               unsas(take(g.size), radices, g.first, g.last, digits);
               for(std::size_t j = g.first; j <= g.last; ++j) {
                  texts[j] = detail::unrank32(n.children[rep ? 0 : j].node(), digits[j]);
               }
            }
            std::u32string out;
            if(rep) {
               const auto& r = n.as<spec::Range>();
               for(std::size_t j = 0; j < parts; ++j) {
                  out += texts[j];
                  if(r.last_delimited || j + 1 < parts) {
                     out += r.delim;
                  }
               }
            } else {
               const auto& delims = n.as<spec::Concat>().delimiters;
               for(std::size_t j = 0; j < parts; ++j) {
                  out += texts[j];
                  if(j < delims.size()) {
                     out += delims[j];
                  }
               }
            }
            return out;
         }
         case PlanKind::length_groups: {
            const auto k = count_of(fmt, f);
            std::size_t gi = 0;
            const auto& g = group_of(p, k, gi);
            if(g.sub) {
               return walk(*g.sub, f);
            }
            return detail::unrank32(n, n.cumulative[g.first - p.groups.front().first] + take(g.size));
         }
         case PlanKind::char_blocks:
         case PlanKind::fixed_blocks:
         case PlanKind::ssn_blocks:
         case PlanKind::ccn_blocks: {
            std::vector<BigInt> ranks;
            std::vector<BigInt> radices;
            element_ranks(p, f, ranks, radices);
            for(const auto& g : p.groups) {
               if(!g.oversized) {
                  unsas(take(g.size), radices, g.first, g.last, ranks);
                  continue;
               }
               const BigInt& w = *max_;
               const BigInt block = sas(ranks, radices, g.first, g.last) / w;
               unsas(block * w + take(block_width(g.size, w, block)), radices, g.first, g.last, ranks);
            }
            return assemble(p, ranks);
         }
         case PlanKind::interval_blocks: {
            const BigInt& w = p.groups.front().size;
            const BigInt block = detail::rank32(n, f) / w;
            return detail::unrank32(n, block * w + take(interval_width(p, block)));
         }
      }
      return {};
   }

   void finish() const {
      if(pos_ != v_.ranks.size()) {
         throw Error(ErrorCode::VectorShapeMismatch, "rank vector has " + std::to_string(v_.ranks.size()) +
                                                        " slots, the example string needs " + std::to_string(pos_));
      }
   }

private:
   BigInt take(const BigInt& size) {
      if(pos_ >= v_.ranks.size()) {
         throw Error(ErrorCode::VectorShapeMismatch, "rank vector is too short");
      }
      if(v_.sizes[pos_] != size) {
         throw Error(ErrorCode::VectorShapeMismatch, "slot " + std::to_string(pos_) + " has size " +
                                                        to_string(v_.sizes[pos_]) + ", expected " + to_string(size));
      }
      const BigInt& r = v_.ranks[pos_++];
      if(r < 0 || r >= size) {
         throw Error(ErrorCode::VectorShapeMismatch, "rank outside its slot");
      }
      return r;
   }

   static std::u32string assemble(const PlanNode& p, const std::vector<BigInt>& ranks) {
      const auto& f = p.format;
      switch(p.kind) {
         case PlanKind::char_blocks: {
            const auto& alphabet = alphabet_of(f);
            std::u32string out;
            for(const auto& r : ranks) {
               out += alphabet.at(r.get_ui());
            }
            if(f.kind() == NodeKind::delim_var_string) {
               out += f.node().as<spec::DelimVarString>().delim;
            }
            return out;
         }
         case PlanKind::fixed_blocks: {
            const auto& sets = f.node().as<spec::FixedString>().charsets;
            std::u32string out;
            for(std::size_t i = 0; i < sets.size(); ++i) {
               out += sets[i].at(ranks[i].get_ui());
            }
            return out;
         }
         case PlanKind::ssn_blocks: return ssn_from_components(ranks);
         default: {
            std::u32string digits;
            for(const auto& r : ranks) {
               digits += static_cast<char32_t>(U'0' + r.get_ui());
            }
            return digits + static_cast<char32_t>(U'0' + luhn_digit(utf8::encode(digits)));
         }
      }
   }

   const RankVector& v_;
   const MaxSize& max_;
   std::size_t pos_ = 0;
};

std::u32string member_or_throw(const Format& f, std::string_view text, ErrorCode code) {
   std::u32string decoded;
   try {
      decoded = utf8::decode(text);
   } catch(const Error& e) {
      throw Error(code, e.what());
   }
   if(!detail::member(f.node(), decoded)) {
      throw Error(code, "'" + std::string(text) + "' is not in the format");
   }
   return decoded;
}

void collect(const PlanNode& p, std::vector<const PlanGroup*>& out) {
   for(const auto& g : p.groups) {
      if(g.sub) {
         collect(*g.sub, out);
      } else {
         out.push_back(&g);
      }
   }
}

}  // namespace

std::vector<const PlanGroup*> SplitPlan::leaf_groups() const {
   std::vector<const PlanGroup*> out;
   collect(*root_, out);
   return out;
}

SplitPlan split(const Format& format, const MaxSize& max) {
   SplitPlan plan;
   plan.max_ = max;
   // Unbounded is the same as a bound no format reaches.
   Planner planner(max ? *max : format.size());
   plan.root_ = planner.plan(format);
   return plan;
}

RankVector rank_multi(const SplitPlan& plan, std::string_view m) {
   const auto text = member_or_throw(plan.format(), m, ErrorCode::NotInFormat);
   RankVector out;
   Ranker(&out, nullptr, plan.max_size()).walk(plan.root(), text);
   return out;
}

RankVector rank_multi(const Format& format, const MaxSize& max, std::string_view m) {
   return rank_multi(split(format, max), m);
}

std::string unrank_multi(const SplitPlan& plan, const RankVector& v, std::string_view f) {
   const auto example = member_or_throw(plan.format(), f, ErrorCode::ExampleFormatMismatch);
   Unranker u(v, plan.max_size());
   auto out = u.walk(plan.root(), example);
   u.finish();
   return utf8::encode(out);
}

std::string unrank_multi(const Format& format, const MaxSize& max, const RankVector& v, std::string_view f) {
   return unrank_multi(split(format, max), v, f);
}

std::string variant_path(const SplitPlan& plan, std::string_view m) {
   const auto text = member_or_throw(plan.format(), m, ErrorCode::NotInFormat);
   RankVector scratch;
   std::string path;
   Ranker(&scratch, &path, plan.max_size()).walk(plan.root(), text);
   return path;
}

}  // namespace gfpe
