#include <stdio.h>
#include <string.h>

#include "circlift.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            const char *e = circlift_last_error();                    \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, \
                    #cond, e ? e : "no error");                       \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    CircliftSpec *spec = NULL;
    CHECK(circlift_spec_new("z4", "double-nega", "1,3,3,0", NULL, &spec) == CIRCLIFT_STATUS_OK);
    size_t n = 0;
    bool self_dual = false;
    uint32_t d = 0;
    CHECK(circlift_spec_length(spec, &n) == CIRCLIFT_STATUS_OK && n == 8);
    CHECK(circlift_spec_is_self_dual(spec, &self_dual) == CIRCLIFT_STATUS_OK && self_dual);
    CHECK(circlift_spec_min_lee_distance(spec, &d) == CIRCLIFT_STATUS_OK && d == 4);
    char *form = NULL;
    CHECK(circlift_spec_canonical_form(spec, &form) == CIRCLIFT_STATUS_OK);
    printf("canonical %s\n", form);
    circlift_string_free(form);
    circlift_spec_free(spec);

    CHECK(circlift_spec_new("z4", "double-nega", "1,9", NULL, &spec) != CIRCLIFT_STATUS_OK);
    CHECK(spec == NULL && circlift_last_error() != NULL);

    CircliftSearch *search = NULL;
    CHECK(circlift_search_run("z4", 16, "bordered-circ", 0, false, &search) == CIRCLIFT_STATUS_OK);
    CHECK(circlift_search_best_distance(search, &d) == CIRCLIFT_STATUS_OK && d == 8);
    size_t count = 0;
    CHECK(circlift_search_record_count(search, &count) == CIRCLIFT_STATUS_OK && count > 0);
    char *line = NULL;
    CHECK(circlift_search_record(search, 0, &line) == CIRCLIFT_STATUS_OK);
    bool valid = false;
    CHECK(circlift_verify_record(line, &valid) == CIRCLIFT_STATUS_OK && valid);
    printf("%s\n", line);
    circlift_string_free(line);
    circlift_search_free(search);
    printf("ok\n");
    return 0;
}
