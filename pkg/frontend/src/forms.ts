/**
 * Update template forms: field definitions, client-side validation that
 * mirrors the server's checkable rules, and payload construction.
 *
 * Server-side 400 violations come back as "field: message" strings and are
 * mapped onto the same field names, so an error looks identical whether it
 * was caught locally or by the service.
 */

import { validateAida } from "./aida.js";

export type TemplateKind = "new-relation" | "new-paper" | "new-study" | "revise-fragment";

export const TEMPLATE_KINDS: TemplateKind[] = [
  "new-relation",
  "new-paper",
  "new-study",
  "revise-fragment",
];

export const RELATION_OPTIONS = ["related", "more-specific", "more-general", "conflicting"];

export interface FieldError {
  field: string;
  message: string;
}

export type FormValues = Record<string, string>;

const DOI_RE = /^(https?:\/\/doi\.org\/)?10\.\d{4,9}\S*$/;

function checkSentence(field: string, value: string, errors: FieldError[]): void {
  for (const message of validateAida(value)) {
    errors.push({ field, message });
  }
}

function sentences(raw: string): string[] {
  return raw
    .split("|")
    .map((s) => s.trim())
    .filter((s) => s.length > 0);
}

export function validateForm(kind: TemplateKind, values: FormValues): FieldError[] {
  const errors: FieldError[] = [];
  const get = (field: string): string => (values[field] ?? "").trim();

  if (kind === "new-relation") {
    checkSentence("subject", get("subject"), errors);
    checkSentence("object", get("object"), errors);
    if (!RELATION_OPTIONS.includes(get("relation"))) {
      errors.push({ field: "relation", message: `unknown relation '${get("relation")}'` });
    }
    if (get("subject") && get("subject") === get("object")) {
      errors.push({ field: "object", message: "subject and object must differ" });
    }
    if (!get("source")) {
      errors.push({ field: "source", message: "required" });
    } else if (!DOI_RE.test(get("source")) && !/^https?:\/\//.test(get("source"))) {
      errors.push({ field: "source", message: "must be a DOI or IRI" });
    }
  } else if (kind === "new-paper") {
    if (!DOI_RE.test(get("doi"))) {
      errors.push({ field: "doi", message: `not a valid DOI '${get("doi")}'` });
    }
    for (const sentence of sentences(get("claims"))) {
      checkSentence("claims", sentence, errors);
    }
  } else if (kind === "new-study") {
    if (!DOI_RE.test(get("paper_doi"))) {
      errors.push({ field: "paper_doi", message: `not a valid DOI '${get("paper_doi")}'` });
    }
    const evidence = sentences(get("evidence"));
    const counter = sentences(get("counter_evidence"));
    if (evidence.length === 0 && counter.length === 0) {
      errors.push({ field: "evidence", message: "at least one evidence or counter-evidence sentence required" });
    }
    for (const sentence of evidence) {
      checkSentence("evidence", sentence, errors);
    }
    for (const sentence of counter) {
      checkSentence("counter_evidence", sentence, errors);
    }
    const size = get("overall_size");
    if (size && !/^[1-9]\d*$/.test(size)) {
      errors.push({ field: "overall_size", message: "must be a positive integer" });
    }
  } else {
    if (!get("fragment")) {
      errors.push({ field: "fragment", message: "required" });
    }
    checkSentence("value", get("value"), errors);
  }
  return errors;
}

export function buildPayload(kind: TemplateKind, values: FormValues): Record<string, unknown> {
  const get = (field: string): string => (values[field] ?? "").trim();
  if (kind === "new-relation") {
    return {
      subject: get("subject"),
      relation: get("relation"),
      object: get("object"),
      source: get("source"),
    };
  }
  if (kind === "new-paper") {
    const payload: Record<string, unknown> = { doi: get("doi"), claims: sentences(get("claims")) };
    if (get("title")) {
      payload.metadata = { title: get("title") };
    }
    return payload;
  }
  if (kind === "new-study") {
    const payload: Record<string, unknown> = {
      paper_doi: get("paper_doi"),
      survey: values["survey"] === "true",
      quantitative: values["quantitative"] === "true",
      empirical: values["empirical"] === "true",
      evidence: sentences(get("evidence")),
      counter_evidence: sentences(get("counter_evidence")),
    };
    for (const field of ["country", "first_author_origin", "land_of_focus", "primary_object", "theoretical_approach"]) {
      if (get(field)) {
        payload[field] = get(field);
      }
    }
    if (get("overall_size")) {
      payload.overall_size = Number(get("overall_size"));
    }
    return payload;
  }
  return { fragment: get("fragment"), value: get("value") };
}

/** Map server 400 violations ("field: message" or bare messages) onto
 * field errors; unprefixed ones land on the form-level "" field. */
export function errorsFromViolations(violations: string[]): FieldError[] {
  return violations.map((violation) => {
    const split = violation.indexOf(": ");
    if (split > 0) {
      const field = violation.slice(0, split).replace(/\[\d+\]$/, "");
      return { field, message: violation.slice(split + 2) };
    }
    return { field: "", message: violation };
  });
}
