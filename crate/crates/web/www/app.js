import init, { weights, identity, estimate } from "./pkg/kahlergrad_web.js";

const $ = (id) => document.getElementById(id);
const out = $("out");

function show(f) {
  try {
    out.className = "";
    out.textContent = f($("json").checked);
  } catch (e) {
    out.className = "error";
    out.textContent = e.message ?? String(e);
  }
}

await init();

$("w-go").onclick = () => show((json) => weights($("w-rho").value, json));
$("i-go").onclick = () =>
  show((json) => identity($("i-rho").value, Number($("i-q").value), $("i-wb").checked, json));
$("e-go").onclick = () => show((json) => estimate(Number($("e-m").value), json));
