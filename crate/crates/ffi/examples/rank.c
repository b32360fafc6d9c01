/* Build: cargo build -p cogmap-ffi
 *        cc examples/rank.c -Iinclude -L../../target/debug -l:libcogmap_ffi.a -lm -lpthread -ldl -o rank */
#include <stdio.h>
#include <stdlib.h>

#include "cogmap.h"

int main(int argc, char **argv) {
    static const double w[16] = {
        0, 0.391, -0.121, 0,
        0, 0,     0,      1,
        0, 0,     0,      -1,
        1, 0,     0,      0,
    };
    CogmapMap *map = NULL;
    CogmapStatus st = argc > 1 ? cogmap_map_load(argv[1], &map) : cogmap_map_from_weights(4, w, &map);
    if (st != COGMAP_STATUS_OK) {
        fprintf(stderr, "load: %s\n", cogmap_last_error_message());
        return 1;
    }
    size_t n = cogmap_map_size(map);

    CogmapMatrix *z = NULL;
    if (cogmap_influence_matrix(map, 1, 0, &z) != COGMAP_STATUS_OK) {
        fprintf(stderr, "influence: %s\n", cogmap_last_error_message());
        cogmap_map_free(map);
        return 1;
    }
    double *scores = malloc(n * sizeof *scores);
    size_t *ranking = malloc(n * sizeof *ranking);
    cogmap_general_influence(z, scores, ranking, n);
    for (size_t k = 0; k < n; k++)
        printf("%zu %.3f\n", ranking[k] + 1, scores[ranking[k]]);

    free(scores);
    free(ranking);
    cogmap_matrix_free(z);
    cogmap_map_free(map);
    return 0;
}
