import { describe, expect, it } from "vitest";

import { buildPayload, errorsFromViolations, validateForm } from "../src/forms.js";

const VALID_RELATION = {
  subject: "Younger users share news on social media more often than older users.",
  relation: "related",
  object: "Habitual social media use predicts frequent news sharing.",
  source: "10.9999/llr-demo.003",
};

describe("relation form", () => {
  it("accepts a valid Fig.-5-shaped form", () => {
    expect(validateForm("new-relation", VALID_RELATION)).toEqual([]);
    expect(buildPayload("new-relation", VALID_RELATION)).toEqual(VALID_RELATION);
  });

  it("rejects subject = object before submission", () => {
    const errors = validateForm("new-relation", { ...VALID_RELATION, object: VALID_RELATION.subject });
    expect(errors.some((e) => e.field === "object" && e.message.includes("differ"))).toBe(true);
  });

  it("rejects an invalid AIDA sentence with the server's wording", () => {
    const errors = validateForm("new-relation", { ...VALID_RELATION, subject: "no capital." });
    expect(errors).toContainEqual({
      field: "subject",
      message: "sentence must start with an uppercase letter or digit",
    });
  });

  it("rejects unknown relations and missing sources", () => {
    expect(
      validateForm("new-relation", { ...VALID_RELATION, relation: "sibling" }).some(
        (e) => e.field === "relation",
      ),
    ).toBe(true);
    expect(
      validateForm("new-relation", { ...VALID_RELATION, source: "" }).some((e) => e.field === "source"),
    ).toBe(true);
  });
});

describe("other templates", () => {
  it("new-paper validates the DOI and splits claims", () => {
    expect(validateForm("new-paper", { doi: "nope", claims: "" }).some((e) => e.field === "doi")).toBe(true);
    const values = { doi: "10.9999/x.1", claims: "First claim holds. |Second claim holds." };
    expect(validateForm("new-paper", values)).toEqual([]);
    expect(buildPayload("new-paper", values)).toEqual({
      doi: "10.9999/x.1",
      claims: ["First claim holds.", "Second claim holds."],
    });
  });

  it("new-study needs evidence and a positive size", () => {
    const base = { paper_doi: "10.9999/x.1", evidence: "", counter_evidence: "" };
    expect(validateForm("new-study", base).some((e) => e.field === "evidence")).toBe(true);
    expect(
      validateForm("new-study", { ...base, evidence: "Claim holds.", overall_size: "-2" }).some(
        (e) => e.field === "overall_size",
      ),
    ).toBe(true);
    const payload = buildPayload("new-study", {
      ...base,
      evidence: "Claim holds.",
      survey: "true",
      overall_size: "650",
      country: "Germany",
    });
    expect(payload).toMatchObject({
      paper_doi: "10.9999/x.1",
      survey: true,
      evidence: ["Claim holds."],
      overall_size: 650,
      country: "Germany",
    });
  });

  it("revise-fragment checks the value as a sentence", () => {
    const errors = validateForm("revise-fragment", { fragment: "f-s1", value: "lowercase" });
    expect(errors.length).toBeGreaterThan(0);
    expect(validateForm("revise-fragment", { fragment: "f-s1", value: "A better claim." })).toEqual([]);
  });
});

describe("server violation mapping", () => {
  it("maps 'field: message' strings onto fields, indexes stripped", () => {
    expect(
      errorsFromViolations([
        "subject: sentence is empty",
        "claims[2]: sentence must end with exactly one '.'",
        "update rejected",
      ]),
    ).toEqual([
      { field: "subject", message: "sentence is empty" },
      { field: "claims", message: "sentence must end with exactly one '.'" },
      { field: "", message: "update rejected" },
    ]);
  });
});
