#include <stdio.h>
#include <string.h>

#include "treespace.h"

#define CHECK(cond)                                              \
    do {                                                         \
        if (!(cond)) {                                           \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                            \
        }                                                        \
    } while (0)

int main(void) {
    TsComplex *c = NULL;
    size_t buf[8];
    size_t len = 0;
    bool torsion = true;
    int64_t chars[8];
    char *text = NULL;

    CHECK(ts_complex_build(TS_SPACE_TREE_SPACE, 5, &c) == TS_STATUS_OK);
    CHECK(ts_complex_f_vector(c, buf, 8, &len) == TS_STATUS_OK);
    CHECK(len == 3 && buf[0] == 25 && buf[1] == 105 && buf[2] == 105);
    CHECK(ts_complex_betti(c, true, buf, 8, &len, &torsion) == TS_STATUS_OK);
    CHECK(len == 3 && buf[2] == 24 && !torsion);
    ts_complex_free(c);

    CHECK(ts_complex_build(TS_SPACE_TREE_SPACE, 99, &c) == TS_STATUS_OUT_OF_RANGE);
    CHECK(c == NULL && ts_last_error() != NULL);

    CHECK(ts_character(TS_MODULE_LIE, 3, chars, 8, &len) == TS_STATUS_OK);
    CHECK(len == 3 && chars[0] == 2 && chars[1] == 0 && chars[2] == -1);

    CHECK(ts_normalize("[[a,b],c]", TS_FLAVOR_ORDINARY, &text) == TS_STATUS_OK);
    CHECK(strcmp(text, "[a,[b,c]] - [b,[a,c]]") == 0);
    ts_string_free(text);

    printf("ok %s\n", ts_version());
    return 0;
}
