#include "btw.h"
#include <assert.h>
#include <stdio.h>
#include <string.h>

int main(void) {
    BtwMap *map = NULL;
    char *err = NULL;
    const char *json =
        "{\"structure\":\"euclidean\",\"pairs\":[[[\"0\",\"0\"],[\"0\",\"0\"]],"
        "[[\"1\",\"0\"],[\"2\",\"0\"]],[[\"1/2\",\"0\"],[\"1\",\"0\"]]]}";
    assert(btw_map_parse(json, &map, &err) == BTW_STATUS_OK);
    assert(btw_map_len(map) == 3);
    char *verdict = NULL;
    assert(btw_map_check(map, true, &verdict) == BTW_STATUS_OK);
    assert(strcmp(verdict, "\"ok\"") == 0);
    btw_string_free(verdict);
    btw_map_free(map);

    char *svg = NULL;
    assert(btw_render_svg("{\"points\":[[\"0\",\"0\"],[\"1\",\"1\"]]}", &svg) == BTW_STATUS_OK);
    assert(strncmp(svg, "<svg", 4) == 0);
    btw_string_free(svg);
    puts("C-ABI-OK");
    return 0;
}
