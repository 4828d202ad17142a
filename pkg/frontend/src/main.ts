/**
 * Viewer wiring: version dropdown, the four view modes, fragment tooltips,
 * and the update forms. All review content comes from GETs; the only write
 * is the update submission.
 */

import { ApiError, Client, type ResolvedView, type ReviewInfo } from "./api.js";
import { replaceChildren } from "./dom.js";
import {
  RELATION_OPTIONS,
  TEMPLATE_KINDS,
  type FormValues,
  type TemplateKind,
  buildPayload,
  errorsFromViolations,
  validateForm,
} from "./forms.js";
import { renderDocument } from "./render.js";

interface ViewState {
  reviewId: string;
  info: ReviewInfo | null;
  version: string;
  mode: string;
  view: ResolvedView | null;
  template: TemplateKind;
}

const state: ViewState = {
  reviewId: new URLSearchParams(window.location.search).get("review") ?? "demo",
  info: null,
  version: "",
  mode: "tooltip-l",
  view: null,
  template: "new-relation",
};

const apiBase = new URLSearchParams(window.location.search).get("api") ?? "";
let client = new Client(apiBase);

function byId<T extends HTMLElement>(id: string): T {
  const element = document.getElementById(id);
  if (!element) {
    throw new Error(`missing #${id}`);
  }
  return element as T;
}

function banner(message: string, kind: "error" | "ok" | "" = ""): void {
  const element = byId<HTMLDivElement>("banner");
  element.textContent = message;
  element.className = kind ? `banner ${kind}` : "banner hidden";
}

function shortVersion(iri: string): string {
  const code = iri.slice(-45, -37);
  return `…${code}`;
}

function fillSelect(select: HTMLSelectElement, options: Array<[string, string]>, selected: string): void {
  select.replaceChildren();
  for (const [value, label] of options) {
    const option = document.createElement("option");
    option.value = value;
    option.textContent = label;
    option.selected = value === selected;
    select.appendChild(option);
  }
}

async function refreshInfo(selectVersion?: string): Promise<void> {
  state.info = await client.getReview(state.reviewId);
  state.version = selectVersion ?? state.info.current_version;
  const versionSelect = byId<HTMLSelectElement>("version-select");
  fillSelect(
    versionSelect,
    state.info.versions.map((v, i) => [
      v,
      `v${i + 1} ${shortVersion(v)}${v === state.info!.publication_version ? " (publication)" : ""}`,
    ]),
    state.version,
  );
  const modeSelect = byId<HTMLSelectElement>("mode-select");
  fillSelect(
    modeSelect,
    state.info.modes.map((m) => [m, m]),
    state.mode,
  );
}

async function refreshView(): Promise<void> {
  if (!state.info) {
    return;
  }
  try {
    state.view = await client.getView(state.reviewId, state.version, state.mode);
    banner("");
  } catch (error) {
    banner(`could not load the view: ${(error as Error).message}`, "error");
    return;
  }
  replaceChildren(byId("document"), renderDocument(state.info, state.view));
}

function formValues(form: HTMLFormElement): FormValues {
  const values: FormValues = {};
  for (const element of Array.from(form.elements)) {
    const input = element as HTMLInputElement;
    if (!input.name) {
      continue;
    }
    values[input.name] = input.type === "checkbox" ? String(input.checked) : input.value;
  }
  return values;
}

function showFieldErrors(form: HTMLFormElement, errors: Array<{ field: string; message: string }>): void {
  for (const element of Array.from(form.querySelectorAll(".field-error"))) {
    element.textContent = "";
  }
  for (const { field, message } of errors) {
    const slot = form.querySelector(`[data-error-for="${field || "_form"}"]`);
    if (slot) {
      slot.textContent = slot.textContent ? `${slot.textContent}; ${message}` : message;
    }
  }
}

const TEMPLATE_FIELDS: Record<TemplateKind, Array<{ name: string; label: string; kind: "text" | "textarea" | "select" | "checkbox" }>> = {
  "new-relation": [
    { name: "subject", label: "Subject statement (AIDA sentence)", kind: "textarea" },
    { name: "relation", label: "Relation", kind: "select" },
    { name: "object", label: "Object statement (AIDA sentence)", kind: "textarea" },
    { name: "source", label: "Source (DOI)", kind: "text" },
  ],
  "new-paper": [
    { name: "doi", label: "Paper DOI", kind: "text" },
    { name: "claims", label: "Claims ('|'-separated AIDA sentences)", kind: "textarea" },
    { name: "title", label: "Title (optional)", kind: "text" },
  ],
  "new-study": [
    { name: "paper_doi", label: "Paper DOI", kind: "text" },
    { name: "survey", label: "Survey", kind: "checkbox" },
    { name: "quantitative", label: "Quantitative", kind: "checkbox" },
    { name: "empirical", label: "Empirical", kind: "checkbox" },
    { name: "country", label: "Country", kind: "text" },
    { name: "overall_size", label: "Study group size", kind: "text" },
    { name: "evidence", label: "Evidence ('|'-separated AIDA sentences)", kind: "textarea" },
    { name: "counter_evidence", label: "Counter-evidence", kind: "textarea" },
  ],
  "revise-fragment": [
    { name: "fragment", label: "Fragment id", kind: "text" },
    { name: "value", label: "Revised sentence", kind: "textarea" },
  ],
};

function buildForm(kind: TemplateKind): void {
  const form = byId<HTMLFormElement>("update-form");
  form.replaceChildren();
  for (const field of TEMPLATE_FIELDS[kind]) {
    const wrapper = document.createElement("label");
    wrapper.className = "field";
    const caption = document.createElement("span");
    caption.textContent = field.label;
    wrapper.appendChild(caption);
    let input: HTMLElement;
    if (field.kind === "textarea") {
      input = document.createElement("textarea");
    } else if (field.kind === "select") {
      const select = document.createElement("select");
      for (const option of RELATION_OPTIONS) {
        const el = document.createElement("option");
        el.value = option;
        el.textContent = option;
        select.appendChild(el);
      }
      input = select;
    } else {
      const el = document.createElement("input");
      el.type = field.kind === "checkbox" ? "checkbox" : "text";
      input = el;
    }
    (input as HTMLInputElement).name = field.name;
    wrapper.appendChild(input);
    const error = document.createElement("span");
    error.className = "field-error";
    error.setAttribute("data-error-for", field.name);
    wrapper.appendChild(error);
    form.appendChild(wrapper);
  }
  const formError = document.createElement("div");
  formError.className = "field-error";
  formError.setAttribute("data-error-for", "_form");
  form.appendChild(formError);
  const submit = document.createElement("button");
  submit.type = "submit";
  submit.textContent = "Publish update";
  form.appendChild(submit);
}

let submitting = false;

async function submitUpdate(event: Event): Promise<void> {
  event.preventDefault();
  if (submitting) {
    return;
  }
  const form = byId<HTMLFormElement>("update-form");
  const values = formValues(form);
  const errors = validateForm(state.template, values);
  showFieldErrors(form, errors);
  if (errors.length > 0) {
    return;
  }
  client.token = byId<HTMLInputElement>("token-input").value.trim();
  submitting = true;
  try {
    const result = await client.postUpdate(state.reviewId, {
      template: state.template,
      payload: buildPayload(state.template, values),
      submitter: byId<HTMLInputElement>("submitter-input").value.trim() || undefined,
    });
    banner(`update registered: ${result.nanopubs.join(", ")}`, "ok");
    await refreshInfo(result.version);
    await refreshView();
    form.reset();
  } catch (error) {
    if (error instanceof ApiError && error.status === 400) {
      showFieldErrors(form, errorsFromViolations(error.violations));
    } else if (error instanceof ApiError && error.status === 403) {
      showFieldErrors(form, [{ field: "", message: error.message }]);
    } else {
      banner(`update failed: ${(error as Error).message}`, "error");
    }
  } finally {
    submitting = false;
  }
}

async function init(): Promise<void> {
  fillSelect(
    byId<HTMLSelectElement>("template-select"),
    TEMPLATE_KINDS.map((k) => [k, k]),
    state.template,
  );
  buildForm(state.template);
  byId<HTMLSelectElement>("template-select").addEventListener("change", (event) => {
    state.template = (event.target as HTMLSelectElement).value as TemplateKind;
    buildForm(state.template);
  });
  byId<HTMLSelectElement>("version-select").addEventListener("change", (event) => {
    state.version = (event.target as HTMLSelectElement).value;
    void refreshView();
  });
  byId<HTMLSelectElement>("mode-select").addEventListener("change", (event) => {
    state.mode = (event.target as HTMLSelectElement).value;
    void refreshView();
  });
  byId<HTMLFormElement>("update-form").addEventListener("submit", (event) => void submitUpdate(event));
  try {
    await refreshInfo();
    await refreshView();
  } catch (error) {
    banner(`could not load the review: ${(error as Error).message}`, "error");
  }
}

void init();
