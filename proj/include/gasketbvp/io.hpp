#ifndef GASKETBVP_IO_HPP
#define GASKETBVP_IO_HPP

#include <string>

#include "gasketbvp/extension.hpp"
#include "gasketbvp/flux.hpp"

namespace gasketbvp {

/// x-spec accepted by the CLI and the C API:
///   decimal value        "0.8125"
///   exponent list        "1,3,5"
///   arithmetic pattern   "arith:1,2"   (n_k = 1 + (k-1)*2)
///   periodic pattern     "periodic:1,3"
DyadicSequence parse_x_spec(const std::string& spec, int depth);

/// {"level": k, "vertices": [{"id","x","y"}], "edges": [[a,b],...]}
std::string mesh_to_json(const GasketMesh& mesh);

/// "vertex_id,x,y,value" rows; restricted to the mask when given.
std::string function_to_csv(const MeshFunction& u, const DomainMask* mask = nullptr);

/// {"a","b","coeffs":[{"word","c"}]}
std::string spectrum_to_json(const HaarSpectrum& spec);
HaarSpectrum spectrum_from_json(const std::string& text);

/// {"constant_part","dn_at_q0","coeffs":[{"word","c"}]}
std::string flux_to_json(const BoundaryFlux& flux);

/// "N,E_min,ratio" rows.
std::string obstruction_to_csv(const std::vector<ObstructionRow>& rows);

}  // namespace gasketbvp

#endif
