#include <stdio.h>
#include <string.h>

#include "affine_index.h"

int main(void) {
    AipCode *code = NULL;
    if (aip_code_parse("O1+ O2+ U1+ U2+", &code) != AIP_STATUS_OK) return 1;

    AipPolynomial *poly = NULL;
    if (aip_polynomial(code, &poly) != AIP_STATUS_OK) return 2;
    char *text = NULL;
    if (aip_polynomial_to_string(poly, &text) != AIP_STATUS_OK) return 3;
    printf("%s\n", text);
    aip_string_free(text);
    aip_polynomial_free(poly);

    int64_t num = 0, den = 0;
    if (aip_vassiliev(code, 2, &num, &den) != AIP_STATUS_OK) return 4;
    printf("%lld/%lld\n", (long long)num, (long long)den);
    aip_code_free(code);

    AipCode *bad = NULL;
    if (aip_code_parse("O1+ O1+", &bad) != AIP_STATUS_PARSE) return 5;
    if (strlen(aip_last_error()) == 0) return 6;
    return 0;
}
