#include "pcgo/grid.hpp"

// Grid is header-only; this translation unit anchors the library target.
namespace pcgo {}
