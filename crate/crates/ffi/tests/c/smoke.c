#include <stdio.h>
#include "rainbow_saturation.h"
int main(void) {
  RsGraph *g = NULL; RsColoring *c = NULL;
  if (rs_fixture_build("core", &g, &c) != RS_STATUS_OK) return 1;
  bool ok = false;
  if (rs_verify_coloring(g, c, 6, &ok) != RS_STATUS_OK || !ok) return 2;
  size_t best = 0;
  if (rs_max_free(g, 6, &best) != RS_STATUS_OK || best != 15) return 3;
  RsGraph *bad = NULL;
  if (rs_graph_from_graph6("???", &bad) != RS_STATUS_INVALID_INPUT || rs_last_error() == NULL) return 4;
  printf("%zu %zu\n", rs_graph_edge_count(g), best);
  rs_coloring_free(c); rs_graph_free(g);
  return 0;
}
