#include <stdio.h>
#include <string.h>

#include "masscalc.h"

static int expect(int ok, const char *what) {
    if (!ok) {
        const char *err = mc_last_error();
        fprintf(stderr, "failed: %s (%s)\n", what, err ? err : "no message");
    }
    return ok ? 0 : 1;
}

int main(void) {
    int failures = 0;
    McField *q = NULL;
    failures += expect(mc_field_new("rational", &q) == MC_STATUS_OK, "field");

    McWeightedSet *set = NULL;
    failures += expect(mc_weighted_set_new(q, 2, &set) == MC_STATUS_OK, "set");
    const char *a[] = {"0", "0"};
    const char *b[] = {"6", "0"};
    failures += expect(mc_weighted_set_insert(set, a, 2, "1") == MC_STATUS_OK, "insert a");
    failures += expect(mc_weighted_set_insert(set, b, 2, "2") == MC_STATUS_OK, "insert b");

    McMassElement *center = NULL;
    failures += expect(mc_reduce(set, &center) == MC_STATUS_OK, "reduce");
    char *json = NULL;
    failures += expect(mc_mass_to_json(center, &json) == MC_STATUS_OK, "json");
    failures += expect(strcmp(json, "{\"type\":\"weighty\",\"point\":[\"4\",\"0\"],\"mass\":\"3\"}") == 0, json);
    mc_string_free(json);

    McField *f5 = NULL;
    mc_field_new("fp:5", &f5);
    McMassElement *other = NULL;
    mc_weighty_new(f5, a, 2, "1", &other);
    McMassElement *sum = NULL;
    failures += expect(mc_mass_add(center, other, &sum) == MC_STATUS_FIELD_MISMATCH, "mismatch");

    mc_mass_free(other);
    mc_mass_free(center);
    mc_weighted_set_free(set);
    mc_field_free(f5);
    mc_field_free(q);
    if (failures == 0) {
        printf("ok\n");
    }
    return failures;
}
