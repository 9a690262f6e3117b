#include "omap/statement.hpp"

#include <algorithm>

namespace omap {
namespace {

template <typename T>
void put_be(std::uint8_t*& p, T v) {
    for (int i = static_cast<int>(sizeof(T)) - 1; i >= 0; --i) {
        *p++ = static_cast<std::uint8_t>(v >> (8 * i));
    }
}

void put_digest(std::uint8_t*& p, const Digest32& d) {
    p = std::copy(d.bytes.begin(), d.bytes.end(), p);
}

bool canonical(const Digest32& d) {
    Fe f;
    return Fe::from_bytes_canonical(d.bytes, f);
}

}  // namespace

std::string_view case_name(CaseId c) {
    switch (c) {
        case CaseId::DefaultPayment: return "default";
        case CaseId::ExchangeInit: return "init";
        case CaseId::CancelByInitiator: return "cancel";
        case CaseId::CounterpartyResponse: return "respond";
        case CaseId::CompleteByInitiator: return "complete";
        case CaseId::CompleteSecondScenario: return "complete2";
        case CaseId::Disallowed: return "disallowed";
    }
    return "?";
}

std::array<std::uint8_t, kChiBytes> canonical_encoding(const PublicInput& chi) {
    std::array<std::uint8_t, kChiBytes> out{};
    std::uint8_t* p = out.data();
    put_digest(p, chi.rt);
    put_digest(p, chi.nf_old_1);
    put_digest(p, chi.nf_old_2);
    put_digest(p, chi.cm_new_1);
    put_digest(p, chi.cm_new_2);
    put_be(p, chi.v_pub_old.color);
    put_be(p, chi.v_pub_old.amount);
    put_be(p, chi.v_pub_new.color);
    put_be(p, chi.v_pub_new.amount);
    put_be(p, chi.block_n);
    put_digest(p, chi.h_sig);
    put_digest(p, chi.h_1);
    put_digest(p, chi.h_2);
    return out;
}

bool has_canonical_digests(const PublicInput& chi) {
    return canonical(chi.rt) && canonical(chi.nf_old_1) && canonical(chi.nf_old_2) &&
           canonical(chi.cm_new_1) && canonical(chi.cm_new_2);
}

MerklePath zero_path(std::size_t depth) {
    MerklePath p;
    p.siblings.resize(depth);
    return p;
}

}  // namespace omap
