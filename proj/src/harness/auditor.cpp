#include <algorithm>
#include <set>

#include "omap/harness.hpp"

namespace omap {
namespace {

using i128 = __int128;

std::string to_string(i128 v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    std::string s;
    while (v != 0) {
        const int d = static_cast<int>(v % 10);
        s.push_back(static_cast<char>('0' + (neg ? -d : d)));
        v /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

bool plain(const Note& n) { return !n.is_dummy() && !n.is_sibling() && !n.has_debt(); }

}  // namespace

void Auditor::add_owner(const std::string& name, const SpendingKey& a_sk) {
    owners_[prf_addr(a_sk)] = {name, a_sk};
}

void Auditor::track(const Note& n) {
    if (n.is_dummy()) return;
    auto it = owners_.find(n.a_pk);
    if (it == owners_.end()) {
        notes_.push_back(Tracked{n, Digest32{}, ""});
        return;
    }
    notes_.push_back(Tracked{n, prf_nf(it->second.second, n.rho), it->second.first});
}

void Auditor::observe(const BuildResult& r) {
    track(r.n_new_1);
    track(r.n_new_2);
}

void Auditor::observe(const Note& minted) { track(minted); }

std::vector<std::string> Auditor::violations(const Ledger& ledger) const {
    std::vector<std::string> out;
    std::map<Color, i128> held;
    for (const auto& t : notes_) {
        if (t.owner.empty()) {
            out.push_back("note " + t.note.cm.hex().substr(0, 16) + " has no known owner");
            continue;
        }
        if (ledger.is_spent(t.nf)) continue;
        held[t.note.color1] += t.note.v1;
        if (t.note.has_debt()) held[t.note.color2] -= t.note.v2;
    }
    std::map<Color, i128> issued;
    for (const auto& [color, s] : ledger.supply()) {
        issued[color] = i128{s.minted} + i128{s.shielded_in} - i128{s.shielded_out};
    }
    std::set<Color> colors;
    for (const auto& [c, v] : held) colors.insert(c);
    for (const auto& [c, v] : issued) colors.insert(c);
    for (Color c : colors) {
        const i128 lhs = issued.contains(c) ? issued.at(c) : 0;
        const i128 rhs = held.contains(c) ? held.at(c) : 0;
        if (lhs != rhs) {
            out.push_back("color " + std::to_string(c) + ": issued " + to_string(lhs) +
                          " but notes hold " + to_string(rhs));
        }
    }

    std::set<Digest32> seen;
    for (const auto& e : ledger.entries()) {
        const auto* tx = std::get_if<JoinSplitTransaction>(&e.tx);
        if (!tx) continue;
        for (const Digest32* nf : {&tx->nf_old_1, &tx->nf_old_2}) {
            if (!seen.insert(*nf).second) {
                out.push_back("nullifier " + nf->hex().substr(0, 16) + " accepted twice");
            }
        }
    }
    return out;
}

std::vector<Note> Auditor::unspent(const std::string& owner, Color color,
                                   const Ledger& ledger) const {
    std::vector<Note> out;
    for (const auto& t : notes_) {
        if (t.owner == owner && plain(t.note) && t.note.color1 == color &&
            !ledger.is_spent(t.nf)) {
            out.push_back(t.note);
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Note& a, const Note& b) { return a.v1 < b.v1; });
    return out;
}

std::vector<Note> Auditor::spent(const std::string& owner, const Ledger& ledger) const {
    std::vector<Note> out;
    for (const auto& t : notes_) {
        if (t.owner == owner && ledger.is_spent(t.nf)) out.push_back(t.note);
    }
    return out;
}

std::map<Color, Amount> Auditor::holdings(const std::string& owner, const Ledger& ledger) const {
    std::map<Color, Amount> out;
    for (const auto& t : notes_) {
        if (t.owner == owner && plain(t.note) && !ledger.is_spent(t.nf)) {
            out[t.note.color1] += t.note.v1;
        }
    }
    return out;
}

}  // namespace omap
