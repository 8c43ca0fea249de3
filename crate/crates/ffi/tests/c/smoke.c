#include <stdio.h>
#include <string.h>

#include "invmult.h"

#define CHECK(cond)                                              \
    do {                                                         \
        if (!(cond)) {                                           \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                            \
        }                                                        \
    } while (0)

int main(void) {
    uint32_t parts[] = {1, 1, 1};
    InvmultPoly *poly = NULL;
    CHECK(invmult_poly_new(parts, 3, &poly) == INVMULT_STATUS_OK);
    char *text = NULL;
    CHECK(invmult_poly_to_string(poly, &text) == INVMULT_STATUS_OK);
    CHECK(strcmp(text, "1 + 2q + 2q^2 + q^3") == 0);
    invmult_string_free(text);
    invmult_poly_free(poly);

    InvmultProbs *probs = NULL;
    CHECK(invmult_probs_parse("1/3,1/3,1/3", &probs) == INVMULT_STATUS_OK);
    InvmultPmf *pmf = NULL;
    CHECK(invmult_pmf_new(probs, 3, &pmf) == INVMULT_STATUS_OK);
    CHECK(invmult_pmf_value_string(pmf, 0, &text) == INVMULT_STATUS_OK);
    CHECK(strcmp(text, "10/27") == 0);
    invmult_string_free(text);
    invmult_pmf_free(pmf);
    invmult_probs_free(probs);

    CHECK(invmult_probs_parse("1/2,0.5", &probs) != INVMULT_STATUS_OK);
    CHECK(invmult_last_error() != NULL);

    uint32_t seq[] = {1, 1, 2, 2, 3, 3};
    double h = 0.0;
    bool defined = false;
    CHECK(invmult_h_statistic(seq, 6, 3, &h, &defined) == INVMULT_STATUS_OK);
    CHECK(defined && h == 1.0);

    printf("ok %s\n", invmult_version());
    return 0;
}
