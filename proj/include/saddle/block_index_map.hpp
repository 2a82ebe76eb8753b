#ifndef SADDLE_BLOCK_INDEX_MAP_HPP
#define SADDLE_BLOCK_INDEX_MAP_HPP

#include "saddle/types.hpp"

namespace saddle {

// Global dof layout for the saddle system: [u_x | u_y | p], componentwise.
struct BlockIndexMap {
    index_t n_ux = 0;
    index_t n_uy = 0;
    index_t n_p = 0;

    index_t n_u() const { return n_ux + n_uy; }
    index_t n_total() const { return n_ux + n_uy + n_p; }

    index_t ux_begin() const { return 0; }
    index_t uy_begin() const { return n_ux; }
    index_t p_begin() const { return n_ux + n_uy; }
};

} // namespace saddle

#endif // SADDLE_BLOCK_INDEX_MAP_HPP
