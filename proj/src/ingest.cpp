#include "cloneasm/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

namespace cloneasm {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

int64_t to_int(std::string_view tok, int line_no, const char* what) {
    int64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        throw InputError("line " + std::to_string(line_no) + ": bad " + what +
                         " '" + std::string(tok) + "'");
    return v;
}

double to_double(std::string_view tok, int line_no, const char* what) {
    try {
        size_t used = 0;
        std::string s(tok);
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InputError("line " + std::to_string(line_no) + ": bad " + what +
                         " '" + std::string(tok) + "'");
    }
}

RelOrient parse_rel(std::string_view tok, int line_no) {
    if (tok == "Same") return RelOrient::Same;
    if (tok == "Reverse") return RelOrient::Reverse;
    throw InputError("line " + std::to_string(line_no) +
                     ": orientation must be Same or Reverse, got '" +
                     std::string(tok) + "'");
}

}  // namespace

ClassifyResult classify_overlap(const Dataset& ds, const RawAlignment& aln,
                                const PipelineParams& params) {
    if (aln.identity < params.min_identity)
        return Rejected{RejectReason::LowIdentity};

    bp len_a = ds.fragment(aln.frag_a).length;
    bp len_b = ds.fragment(aln.frag_b).length;
    bp tol_a = ds.end_tolerance(aln.frag_a, params);
    bp tol_b = ds.end_tolerance(aln.frag_b, params);

    // Unaligned tails on each fragment's own axis.
    bp ga_l = aln.a_start - 1;
    bp ga_r = len_a - aln.a_end;
    bp gb_l = aln.b_start - 1;
    bp gb_r = len_b - aln.b_end;

    // Offset of oriented b on a's axis, from where the aligned spans coincide.
    bp offset;
    bp b_left_tail, b_right_tail;  // tails of the oriented copy of b
    if (aln.strand == RelOrient::Same) {
        offset = (aln.a_start - 1) - (aln.b_start - 1);
        b_left_tail = gb_l;
        b_right_tail = gb_r;
    } else {
        offset = (aln.a_start - 1) - (len_b - aln.b_end);
        b_left_tail = gb_r;
        b_right_tail = gb_l;
    }

    bool b_contained = gb_l <= tol_b && gb_r <= tol_b;
    bool a_contained = ga_l <= tol_a && ga_r <= tol_a;
    bool suffix_prefix = ga_r <= tol_a && b_left_tail <= tol_b;
    bool prefix_suffix = ga_l <= tol_a && b_right_tail <= tol_b;

    ValidOverlap ov;
    ov.frag_a = aln.frag_a;
    ov.frag_b = aln.frag_b;
    ov.offset = offset;
    ov.orient = aln.strand;
    ov.identity = aln.identity;
    ov.overlap_length = overlap_span(offset, len_a, len_b);

    if (a_contained || b_contained)
        ov.kind = OverlapKind::Containment;
    else if (suffix_prefix || prefix_suffix)
        ov.kind = OverlapKind::Dovetail;
    else
        return Rejected{RejectReason::Internal};
    return canonicalize_overlap(ds, ov);
}

Dataset parse_clone_table(std::istream& in) {
    Dataset ds;
    std::string line;
    int line_no = 0;
    int pending = 0;           // fragment rows still expected for cur clone
    CloneIndex cur = kNoIndex;
    int order_pos = 0;

    while (std::getline(in, line)) {
        ++line_no;
        auto tok = split_ws(line);
        if (tok.empty() || tok[0][0] == '#') continue;
        if (pending == 0) {
            if (tok.size() != 5)
                throw InputError("line " + std::to_string(line_no) +
                                 ": clone header needs 5 fields, got " +
                                 std::to_string(tok.size()));
            Clone c;
            c.id = std::string(tok[0]);
            c.estimated_length = to_int(tok[1], line_no, "estimated length");
            int64_t ph = to_int(tok[2], line_no, "phase");
            if (ph < 1 || ph > 3)
                throw InputError("line " + std::to_string(line_no) + ": phase must be 1, 2 or 3");
            c.phase = static_cast<Phase>(ph);
            if (tok[3] != "U") c.chromosome = std::string(tok[3]);
            int64_t nf = to_int(tok[4], line_no, "fragment count");
            if (nf <= 0)
                throw InputError("line " + std::to_string(line_no) +
                                 ": clone must declare at least one fragment");
            cur = ds.add_clone(std::move(c));
            pending = static_cast<int>(nf);
            order_pos = 0;
        } else {
            if (tok.size() < 4)
                throw InputError("line " + std::to_string(line_no) +
                                 ": fragment row needs 4 fields, got " +
                                 std::to_string(tok.size()));
            Fragment f;
            f.id = std::string(tok[0]);
            bp start = to_int(tok[1], line_no, "start");
            bp end = to_int(tok[2], line_no, "end");
            f.length = to_int(tok[3], line_no, "length");
            if (start <= 0 || end < start)
                throw InputError("line " + std::to_string(line_no) + ": bad fragment coordinates");
            if (f.length != end - start + 1)
                throw InputError("line " + std::to_string(line_no) + ": fragment " + f.id +
                                 " length " + std::to_string(f.length) +
                                 " does not match start/end span " +
                                 std::to_string(end - start + 1));
            for (size_t t = 4; t < tok.size(); ++t) {
                if (tok[t] == "L") f.end_mark = EndMark::Left;
                else if (tok[t] == "R") f.end_mark = EndMark::Right;
                else f.declared_order = static_cast<int32_t>(to_int(tok[t], line_no, "order index"));
            }
            f.clone = cur;
            // phase 2 fragments are totally ordered by the record itself
            if (ds.clone(cur).phase == Phase::Draft2 && !f.declared_order)
                f.declared_order = order_pos;
            ++order_pos;
            FragIndex fi = ds.add_fragment(std::move(f));
            ds.link_fragment(cur, fi);
            --pending;
        }
    }
    if (pending != 0)
        throw InputError("clone table ends mid-record: " +
                         std::to_string(pending) + " fragment rows missing for clone " +
                         ds.clone(cur).id);
    ds.build();
    return ds;
}

void write_clone_table(std::ostream& out, const Dataset& ds) {
    for (size_t ci = 0; ci < ds.clone_count(); ++ci) {
        const Clone& c = ds.clone(static_cast<CloneIndex>(ci));
        out << c.id << '\t' << c.estimated_length << '\t' << static_cast<int>(c.phase)
            << '\t' << (c.chromosome ? *c.chromosome : std::string("U")) << '\t'
            << c.fragments.size() << '\n';
        bp start = 1;
        for (FragIndex fi : c.fragments) {
            const Fragment& f = ds.fragment(fi);
            out << f.id << '\t' << start << '\t' << (start + f.length - 1) << '\t' << f.length;
            if (f.end_mark == EndMark::Left) out << "\tL";
            if (f.end_mark == EndMark::Right) out << "\tR";
            if (f.declared_order && c.phase != Phase::Draft2) out << '\t' << *f.declared_order;
            out << '\n';
            start += f.length;
        }
    }
}

std::vector<RawAlignment> parse_alignments(std::istream& in, const Dataset& ds,
                                           Diagnostics& diag) {
    std::vector<RawAlignment> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tok = split_ws(line);
        if (tok.empty() || tok[0][0] == '#') continue;
        if (tok.size() != 8)
            throw InputError("line " + std::to_string(line_no) +
                             ": alignment row needs 8 fields, got " + std::to_string(tok.size()));
        RawAlignment a;
        a.frag_a = ds.find_fragment(std::string(tok[0]));
        a.frag_b = ds.find_fragment(std::string(tok[3]));
        if (a.frag_a == kNoIndex || a.frag_b == kNoIndex) {
            diag.warn("alignments line " + std::to_string(line_no) + ": unknown fragment id, row skipped");
            continue;
        }
        a.a_start = to_int(tok[1], line_no, "a_start");
        a.a_end = to_int(tok[2], line_no, "a_end");
        a.b_start = to_int(tok[4], line_no, "b_start");
        a.b_end = to_int(tok[5], line_no, "b_end");
        a.strand = parse_rel(tok[6], line_no);
        a.identity = to_double(tok[7], line_no, "identity");
        if (a.a_start <= 0 || a.a_start > a.a_end || a.a_end > ds.fragment(a.frag_a).length ||
            a.b_start <= 0 || a.b_start > a.b_end || a.b_end > ds.fragment(a.frag_b).length)
            throw InputError("line " + std::to_string(line_no) + ": alignment coordinates out of range");
        if (a.identity < 0.0 || a.identity > 1.0)
            throw InputError("line " + std::to_string(line_no) + ": identity out of [0,1]");
        out.push_back(a);
    }
    return out;
}

void write_alignments(std::ostream& out, const Dataset& ds,
                      const std::vector<RawAlignment>& alns) {
    for (const auto& a : alns) {
        out << ds.fragment(a.frag_a).id << '\t' << a.a_start << '\t' << a.a_end << '\t'
            << ds.fragment(a.frag_b).id << '\t' << a.b_start << '\t' << a.b_end << '\t'
            << (a.strand == RelOrient::Same ? "Same" : "Reverse") << '\t' << a.identity
            << '\n';
    }
}

std::vector<OrientationPair> parse_orientation_pairs(std::istream& in,
                                                     const Dataset& ds,
                                                     Diagnostics& diag) {
    std::vector<OrientationPair> out;
    std::unordered_map<uint64_t, size_t> seen;  // canonical pair+orient -> index
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tok = split_ws(line);
        if (tok.empty() || tok[0][0] == '#') continue;
        if (tok.size() != 3)
            throw InputError("line " + std::to_string(line_no) +
                             ": orientation row needs 3 fields, got " + std::to_string(tok.size()));
        FragIndex a = ds.find_fragment(std::string(tok[0]));
        FragIndex b = ds.find_fragment(std::string(tok[1]));
        RelOrient rel = parse_rel(tok[2], line_no);
        if (a == kNoIndex || b == kNoIndex) {
            diag.warn("orientation line " + std::to_string(line_no) + ": unknown fragment id, row skipped");
            continue;
        }
        if (a == b) {
            diag.warn("orientation line " + std::to_string(line_no) + ": self pair skipped");
            continue;
        }
        if (!ds.canonical_before(a, b)) std::swap(a, b);
        uint64_t k = (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 33) |
                     (static_cast<uint64_t>(static_cast<uint32_t>(b)) << 1) |
                     (rel == RelOrient::Reverse ? 1u : 0u);
        auto it = seen.find(k);
        if (it != seen.end()) {
            ++out[it->second].evidence_count;
        } else {
            seen.emplace(k, out.size());
            out.push_back({a, b, rel, 1});
        }
    }
    return out;
}

void write_orientation_pairs(std::ostream& out, const Dataset& ds,
                             const std::vector<OrientationPair>& pairs) {
    for (const auto& p : pairs)
        for (int i = 0; i < p.evidence_count; ++i)
            out << ds.fragment(p.frag_a).id << '\t' << ds.fragment(p.frag_b).id << '\t'
                << (p.orient == RelOrient::Same ? "Same" : "Reverse") << '\n';
}

std::vector<ValidOverlap> parse_nt_pairs(std::istream& in, const Dataset& ds,
                                         Diagnostics& diag) {
    (void)diag;
    std::vector<ValidOverlap> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tok = split_ws(line);
        if (tok.empty() || tok[0][0] == '#') continue;
        if (tok.size() != 3)
            throw InputError("line " + std::to_string(line_no) +
                             ": nt-pair row needs 3 fields, got " + std::to_string(tok.size()));
        FragIndex a = ds.find_fragment(std::string(tok[0]));
        FragIndex b = ds.find_fragment(std::string(tok[1]));
        if (a == kNoIndex || b == kNoIndex)
            throw InputError("line " + std::to_string(line_no) + ": nt-pair references unknown fragment id");
        ValidOverlap ov;
        ov.frag_a = a;
        ov.frag_b = b;
        ov.kind = OverlapKind::NtPair;
        ov.offset = to_int(tok[2], line_no, "offset");
        ov.orient = RelOrient::Same;  // annotation order of finished sequences
        ov.identity = 1.0;
        ov.overlap_length = overlap_span(ov.offset, ds.fragment(a).length, ds.fragment(b).length);
        out.push_back(canonicalize_overlap(ds, ov));
    }
    return out;
}

void write_nt_pairs(std::ostream& out, const Dataset& ds,
                    const std::vector<ValidOverlap>& pairs) {
    for (const auto& p : pairs)
        out << ds.fragment(p.frag_a).id << '\t' << ds.fragment(p.frag_b).id << '\t'
            << p.offset << '\n';
}

void parse_sequences(std::istream& in, Dataset& ds, Diagnostics& diag) {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tok = split_ws(line);
        if (tok.empty() || tok[0][0] == '#') continue;
        if (tok.size() != 2)
            throw InputError("line " + std::to_string(line_no) +
                             ": sequence row needs 2 fields, got " + std::to_string(tok.size()));
        FragIndex fi = ds.find_fragment(std::string(tok[0]));
        if (fi == kNoIndex) {
            diag.warn("sequences line " + std::to_string(line_no) + ": unknown fragment id, row skipped");
            continue;
        }
        std::string seq(tok[1]);
        for (char ch : seq)
            if (ch != 'A' && ch != 'C' && ch != 'G' && ch != 'T' && ch != 'N')
                throw InputError("line " + std::to_string(line_no) + ": base must be one of ACGTN");
        ds.set_sequence(fi, std::move(seq));
    }
}

}  // namespace cloneasm
